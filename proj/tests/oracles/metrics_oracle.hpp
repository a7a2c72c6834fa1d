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

// Brute-force trajectory-metric evaluator, deliberately independent of the
// library: plain arrays, its own quaternion arithmetic, Horn's closed-form
// alignment (unit quaternion from the max eigenvector of the 4x4 N matrix,
// found by Jacobi sweeps) instead of the SVD route the library uses.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace sba::test {

struct OraclePose {
  double t[3];
  double q[4];  // x, y, z, w

  // Rotate a vector by the quaternion.
  std::array<double, 3> rotate(const double v[3]) const {
    const double x = q[0], y = q[1], z = q[2], w = q[3];
    // q * (v, 0) * conj(q)
    const double uvx = 2.0 * (y * v[2] - z * v[1]);
    const double uvy = 2.0 * (z * v[0] - x * v[2]);
    const double uvz = 2.0 * (x * v[1] - y * v[0]);
    return {v[0] + w * uvx + (y * uvz - z * uvy),
            v[1] + w * uvy + (z * uvx - x * uvz),
            v[2] + w * uvz + (x * uvy - y * uvx)};
  }

  OraclePose inverse() const {
    OraclePose out;
    out.q[0] = -q[0];
    out.q[1] = -q[1];
    out.q[2] = -q[2];
    out.q[3] = q[3];
    const auto rt = out.rotate(t);
    out.t[0] = -rt[0];
    out.t[1] = -rt[1];
    out.t[2] = -rt[2];
    return out;
  }

  OraclePose compose(const OraclePose& other) const {
    OraclePose out;
    const double ax = q[0], ay = q[1], az = q[2], aw = q[3];
    const double bx = other.q[0], by = other.q[1], bz = other.q[2],
                 bw = other.q[3];
    out.q[0] = aw * bx + ax * bw + ay * bz - az * by;
    out.q[1] = aw * by - ax * bz + ay * bw + az * bx;
    out.q[2] = aw * bz + ax * by - ay * bx + az * bw;
    out.q[3] = aw * bw - ax * bx - ay * by - az * bz;
    const auto rt = rotate(other.t);
    out.t[0] = rt[0] + t[0];
    out.t[1] = rt[1] + t[1];
    out.t[2] = rt[2] + t[2];
    return out;
  }
};

struct OracleStats {
  double rmse, mean, std, median, min, max;
};

inline OracleStats oracle_stats(std::vector<double> e) {
  OracleStats s{};
  const double n = static_cast<double>(e.size());
  double sum = 0.0, sum_sq = 0.0;
  for (double v : e) {
    sum += v;
    sum_sq += v * v;
  }
  s.mean = sum / n;
  s.rmse = std::sqrt(sum_sq / n);
  double acc = 0.0;
  for (double v : e) acc += (v - s.mean) * (v - s.mean);
  s.std = e.size() > 1 ? std::sqrt(acc / (n - 1.0)) : 0.0;
  std::sort(e.begin(), e.end());
  s.min = e.front();
  s.max = e.back();
  s.median = e[(e.size() - 1) / 2];
  return s;
}

struct OracleSim3 {
  double scale;
  double q[4];  // rotation, x y z w
  double t[3];
};

/// Horn's closed-form alignment of src onto dst (optionally with scale).
inline OracleSim3 horn_align(const std::vector<std::array<double, 3>>& src,
                             const std::vector<std::array<double, 3>>& dst,
                             bool with_scale) {
  const std::size_t n = src.size();
  double cs[3] = {0, 0, 0}, cd[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      cs[k] += src[i][k];
      cd[k] += dst[i][k];
    }
  }
  for (int k = 0; k < 3; ++k) {
    cs[k] /= n;
    cd[k] /= n;
  }

  double S[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  for (std::size_t i = 0; i < n; ++i) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        S[r][c] += (src[i][r] - cs[r]) * (dst[i][c] - cd[c]);
      }
    }
  }

  // Horn's symmetric 4x4 matrix, ordered (w, x, y, z).
  double N[4][4];
  N[0][0] = S[0][0] + S[1][1] + S[2][2];
  N[0][1] = S[1][2] - S[2][1];
  N[0][2] = S[2][0] - S[0][2];
  N[0][3] = S[0][1] - S[1][0];
  N[1][1] = S[0][0] - S[1][1] - S[2][2];
  N[1][2] = S[0][1] + S[1][0];
  N[1][3] = S[2][0] + S[0][2];
  N[2][2] = -S[0][0] + S[1][1] - S[2][2];
  N[2][3] = S[1][2] + S[2][1];
  N[3][3] = -S[0][0] - S[1][1] + S[2][2];
  for (int r = 1; r < 4; ++r) {
    for (int c = 0; c < r; ++c) N[r][c] = N[c][r];
  }

  // Jacobi eigensolver: overkill for 4x4 but dependency-free and robust.
  double V[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p) {
      for (int r = p + 1; r < 4; ++r) off += N[p][r] * N[p][r];
    }
    if (off < 1e-24) break;
    for (int p = 0; p < 4; ++p) {
      for (int r = p + 1; r < 4; ++r) {
        if (std::abs(N[p][r]) < 1e-300) continue;
        const double theta = (N[r][r] - N[p][p]) / (2.0 * N[p][r]);
        const double sign = theta >= 0.0 ? 1.0 : -1.0;
        const double ttt =
            sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(ttt * ttt + 1.0);
        const double s = ttt * c;
        for (int k = 0; k < 4; ++k) {
          const double npk = N[p][k], nrk = N[r][k];
          N[p][k] = c * npk - s * nrk;
          N[r][k] = s * npk + c * nrk;
        }
        for (int k = 0; k < 4; ++k) {
          const double nkp = N[k][p], nkr = N[k][r];
          N[k][p] = c * nkp - s * nkr;
          N[k][r] = s * nkp + c * nkr;
          const double vkp = V[k][p], vkr = V[k][r];
          V[k][p] = c * vkp - s * vkr;
          V[k][r] = s * vkp + c * vkr;
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (N[i][i] > N[best][best]) best = i;
  }

  OracleSim3 out;
  // V columns hold eigenvectors in (w, x, y, z) order.
  out.q[3] = V[0][best];
  out.q[0] = V[1][best];
  out.q[1] = V[2][best];
  out.q[2] = V[3][best];
  const double qn = std::sqrt(out.q[0] * out.q[0] + out.q[1] * out.q[1] +
                              out.q[2] * out.q[2] + out.q[3] * out.q[3]);
  for (double& v : out.q) v /= qn;

  OraclePose rot{{0, 0, 0}, {out.q[0], out.q[1], out.q[2], out.q[3]}};
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc[3] = {src[i][0] - cs[0], src[i][1] - cs[1],
                          src[i][2] - cs[2]};
    const auto rs = rot.rotate(sc);
    num += rs[0] * (dst[i][0] - cd[0]) + rs[1] * (dst[i][1] - cd[1]) +
           rs[2] * (dst[i][2] - cd[2]);
    den += sc[0] * sc[0] + sc[1] * sc[1] + sc[2] * sc[2];
  }
  out.scale = with_scale ? num / den : 1.0;
  const auto rcs = rot.rotate(cs);
  for (int k = 0; k < 3; ++k) out.t[k] = cd[k] - out.scale * rcs[k];
  return out;
}

enum class OracleAlign { kNone, kSe3, kSim3 };

/// ATE over index-matched pose lists.
inline OracleStats oracle_ate(const std::vector<OraclePose>& est,
                              const std::vector<OraclePose>& gt,
                              OracleAlign align) {
  std::vector<std::array<double, 3>> ep, gp;
  for (const auto& p : est) ep.push_back({p.t[0], p.t[1], p.t[2]});
  for (const auto& p : gt) gp.push_back({p.t[0], p.t[1], p.t[2]});

  OracleSim3 tf{1.0, {0, 0, 0, 1}, {0, 0, 0}};
  if (align != OracleAlign::kNone) {
    tf = horn_align(ep, gp, align == OracleAlign::kSim3);
  }
  OraclePose rot{{0, 0, 0}, {tf.q[0], tf.q[1], tf.q[2], tf.q[3]}};

  std::vector<double> errors;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double p[3] = {ep[i][0], ep[i][1], ep[i][2]};
    const auto rp = rot.rotate(p);
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double diff = gp[i][k] - (tf.scale * rp[k] + tf.t[k]);
      d2 += diff * diff;
    }
    errors.push_back(std::sqrt(d2));
  }
  return oracle_stats(errors);
}

/// Translational RPE with frame delta over index-matched pose lists.
inline OracleStats oracle_rpe(const std::vector<OraclePose>& est,
                              const std::vector<OraclePose>& gt,
                              std::size_t delta) {
  std::vector<double> errors;
  for (std::size_t i = 0; i + delta < est.size(); ++i) {
    const OraclePose rel_gt = gt[i].inverse().compose(gt[i + delta]);
    const OraclePose rel_est = est[i].inverse().compose(est[i + delta]);
    const OraclePose err = rel_gt.inverse().compose(rel_est);
    errors.push_back(std::sqrt(err.t[0] * err.t[0] + err.t[1] * err.t[1] +
                               err.t[2] * err.t[2]));
  }
  return oracle_stats(errors);
}

}  // namespace sba::test
