/******************************************************************************
 * Copyright 2026 Salient BA Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/
#pragma once

// Umbrella header for the salient bundle-adjustment toolkit.

#include "salient_ba/core/alignment.hpp"
#include "salient_ba/core/camera.hpp"
#include "salient_ba/core/pose.hpp"
#include "salient_ba/core/rotation.hpp"
#include "salient_ba/core/trajectory.hpp"
#include "salient_ba/error.hpp"
#include "salient_ba/io/csv.hpp"
#include "salient_ba/io/pgm.hpp"
#include "salient_ba/io/snapshot.hpp"
#include "salient_ba/io/svg.hpp"
#include "salient_ba/io/tum.hpp"
#include "salient_ba/metrics/stats.hpp"
#include "salient_ba/metrics/trajectory_metrics.hpp"
#include "salient_ba/pipeline/config.hpp"
#include "salient_ba/pipeline/runner.hpp"
#include "salient_ba/saliency/fusion.hpp"
#include "salient_ba/saliency/raster.hpp"
#include "salient_ba/saliency/weight.hpp"
#include "salient_ba/sim/dataset.hpp"
#include "salient_ba/sim/rng.hpp"
#include "salient_ba/sim/world.hpp"
#include "salient_ba/solver/bundle.hpp"
#include "salient_ba/solver/motion_only.hpp"
#include "salient_ba/solver/residual.hpp"
#include "salient_ba/solver/types.hpp"
