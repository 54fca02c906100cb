// Copyright 2026 The contestable authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace contestable {

using Hash256 = std::array<unsigned char, 32>;

inline constexpr Hash256 kZeroHash{};

Hash256 sha256(std::string_view bytes);

std::string to_hex(const Hash256& h);
std::optional<Hash256> from_hex(std::string_view hex);  // 64 lowercase hex digits

}  // namespace contestable
