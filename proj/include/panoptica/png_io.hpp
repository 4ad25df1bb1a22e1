// Copyright 2026 The Panoptica Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>

#include "panoptica/image.hpp"

namespace panoptica {

// PNG codecs used for every raster artifact. Encoding parameters are fixed so
// that identical buffers always produce identical files.

void WritePng(const std::filesystem::path& path, const RgbImage& image);
void WritePng(const std::filesystem::path& path, const GrayImage& image);
void WritePng(const std::filesystem::path& path, const Image<std::uint16_t>& image);

RgbImage ReadPngRgb(const std::filesystem::path& path);
GrayImage ReadPngGray8(const std::filesystem::path& path);
Image<std::uint16_t> ReadPngGray16(const std::filesystem::path& path);

}  // namespace panoptica
