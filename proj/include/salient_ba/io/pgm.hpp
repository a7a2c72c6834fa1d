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

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <variant>
#include <vector>

#include "salient_ba/error.hpp"
#include "salient_ba/saliency/raster.hpp"

namespace sba {

// Binary PGM (P5) rasters. Saliency maps are 8-bit (maxval 255); depth maps
// are 16-bit big-endian (maxval 65535) with the millimeter scale recorded in
// a "# scale: <mm-per-unit>" header comment. Writing is deterministic, so
// save -> load -> save reproduces the file byte for byte.

namespace detail {

constexpr std::size_t kMaxPixels = std::size_t{1} << 26;  // 64 Mpixel guard

struct PgmHeader {
  int width = 0;
  int height = 0;
  int maxval = 0;
  double scale_mm = 1.0;
  bool has_scale = false;
  std::size_t payload_offset = 0;
};

inline PgmHeader parse_pgm_header(const std::string& bytes,
                                  const std::string& path) {
  PgmHeader h;
  std::size_t pos = 0;
  const auto fail = [&](const std::string& why) -> void {
    throw IoError("malformed PGM header in " + path + ": " + why);
  };

  // Token scanner: skips whitespace and '#' comments, remembering any
  // "# scale: <value>" comment on the way.
  const auto next_token = [&]() -> std::string {
    while (pos < bytes.size()) {
      const char c = bytes[pos];
      if (c == '#') {
        const std::size_t eol = bytes.find('\n', pos);
        const std::string comment =
            bytes.substr(pos + 1, eol == std::string::npos ? std::string::npos
                                                           : eol - pos - 1);
        const std::size_t key = comment.find("scale:");
        if (key != std::string::npos) {
          try {
            h.scale_mm = std::stod(comment.substr(key + 6));
            h.has_scale = true;
          } catch (const std::exception&) {
            fail("unparseable scale comment");
          }
        }
        if (eol == std::string::npos) fail("unterminated comment");
        pos = eol + 1;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos;
      } else {
        break;
      }
    }
    if (pos >= bytes.size()) fail("truncated header");
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(
                                     bytes[pos])) &&
           bytes[pos] != '#') {
      ++pos;
    }
    return bytes.substr(start, pos - start);
  };

  const auto next_int = [&](const char* what) -> long {
    const std::string tok = next_token();
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(tok, &used);
    } catch (const std::exception&) {
      fail(std::string("non-numeric ") + what);
    }
    if (used != tok.size()) fail(std::string("non-numeric ") + what);
    return value;
  };

  if (next_token() != "P5") fail("magic is not P5");
  const long w = next_int("width");
  const long h_px = next_int("height");
  const long maxval = next_int("maxval");
  if (w <= 0 || h_px <= 0) fail("non-positive dimensions");
  if (static_cast<unsigned long>(w) * static_cast<unsigned long>(h_px) >
      kMaxPixels) {
    throw IoError("PGM dimension overflow in " + path);
  }
  if (maxval != 255 && maxval != 65535) fail("unsupported maxval");
  // Exactly one whitespace byte separates maxval from the payload.
  if (pos >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    fail("missing separator before payload");
  }
  ++pos;
  h.width = static_cast<int>(w);
  h.height = static_cast<int>(h_px);
  h.maxval = static_cast<int>(maxval);
  h.payload_offset = pos;
  return h;
}

inline std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return bytes;
}

inline void write_file_bytes(const std::filesystem::path& path,
                             const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write: " + path.string());
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string encode_pgm(const SaliencyMap& map) {
  std::string out = "P5\n" + std::to_string(map.width()) + " " +
                    std::to_string(map.height()) + "\n255\n";
  out.reserve(out.size() + map.values().size());
  for (double v : map.values()) {
    out.push_back(static_cast<char>(
        static_cast<std::uint8_t>(std::llround(v))));
  }
  return out;
}

inline std::string encode_pgm(const DepthMap& map) {
  std::string out = "P5\n# scale: " + detail::format_double(map.mm_per_unit()) +
                    "\n" + std::to_string(map.width()) + " " +
                    std::to_string(map.height()) + "\n65535\n";
  out.reserve(out.size() + 2 * map.raw().size());
  for (std::uint16_t v : map.raw()) {
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>(v & 0xFF));
  }
  return out;
}

inline void save_raster(const SaliencyMap& map,
                        const std::filesystem::path& path) {
  detail::write_file_bytes(path, encode_pgm(map));
}

inline void save_raster(const DepthMap& map,
                        const std::filesystem::path& path) {
  detail::write_file_bytes(path, encode_pgm(map));
}

using Raster = std::variant<SaliencyMap, DepthMap>;

/// Loads a P5 raster: maxval 255 yields a SaliencyMap, maxval 65535 a
/// DepthMap (with the scale comment applied). Throws IoError on malformed
/// headers, oversized dimensions, or truncated payloads.
inline Raster load_raster(const std::filesystem::path& path) {
  const std::string bytes = detail::read_file_bytes(path);
  const detail::PgmHeader h = detail::parse_pgm_header(bytes, path.string());
  const std::size_t pixels =
      static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);

  if (h.maxval == 255) {
    if (bytes.size() - h.payload_offset < pixels) {
      throw IoError("truncated PGM payload in " + path.string());
    }
    std::vector<double> values(pixels);
    for (std::size_t i = 0; i < pixels; ++i) {
      values[i] = static_cast<double>(
          static_cast<std::uint8_t>(bytes[h.payload_offset + i]));
    }
    return SaliencyMap(h.width, h.height, std::move(values));
  }

  if (bytes.size() - h.payload_offset < 2 * pixels) {
    throw IoError("truncated PGM payload in " + path.string());
  }
  std::vector<std::uint16_t> raw(pixels);
  for (std::size_t i = 0; i < pixels; ++i) {
    const auto hi =
        static_cast<std::uint8_t>(bytes[h.payload_offset + 2 * i]);
    const auto lo =
        static_cast<std::uint8_t>(bytes[h.payload_offset + 2 * i + 1]);
    raw[i] = static_cast<std::uint16_t>((hi << 8) | lo);
  }
  return DepthMap(h.width, h.height, std::move(raw), h.scale_mm);
}

inline SaliencyMap load_saliency_pgm(const std::filesystem::path& path) {
  Raster r = load_raster(path);
  if (!std::holds_alternative<SaliencyMap>(r)) {
    throw IoError("expected an 8-bit saliency PGM: " + path.string());
  }
  return std::get<SaliencyMap>(std::move(r));
}

inline DepthMap load_depth_pgm(const std::filesystem::path& path) {
  Raster r = load_raster(path);
  if (!std::holds_alternative<DepthMap>(r)) {
    throw IoError("expected a 16-bit depth PGM: " + path.string());
  }
  return std::get<DepthMap>(std::move(r));
}

}  // namespace sba
