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

#include <stdexcept>
#include <string>

namespace sba {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A point fell at or behind the camera plane (z <= z_min).
class BehindCameraError : public Error {
 public:
  using Error::Error;
};

/// Geometry too degenerate to solve: collinear alignment sets,
/// rotations with angle at pi, and similar.
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

/// Two rasters (or other containers) that must agree in shape do not.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// A coordinate or index outside its valid domain.
class OutOfBoundsError : public Error {
 public:
  using Error::Error;
};

/// A value that violates a documented precondition or type invariant.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Not enough data to pose the problem (observations, poses, matches).
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// File and stream failures: missing files, malformed headers,
/// truncated payloads, unwritable outputs.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Bad configuration input; the message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Synthetic-world generation could not satisfy its own constraints.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sba
