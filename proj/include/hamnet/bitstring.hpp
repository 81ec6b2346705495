// Copyright 2026 The hamnet Authors
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

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hamnet {

/// Collision-free detection outcome: one bit per output mode, set where a
/// photon was detected. Mode 0 is the leftmost character of the text form.
/// Packed into a single machine word, so at most 64 modes.
class Bitstring {
 public:
  static constexpr int kMaxLength = 64;

  Bitstring() = default;
  Bitstring(std::uint64_t bits, int length);

  static Bitstring from_modes(std::span<const int> modes, int length);
  /// Parses a '0'/'1' string such as "0101".
  static Bitstring parse(std::string_view text);

  std::uint64_t bits() const { return bits_; }
  int length() const { return length_; }
  int weight() const { return std::popcount(bits_); }
  bool test(int mode) const { return (bits_ >> mode) & 1U; }
  std::vector<int> modes() const;
  std::string to_string() const;

  friend bool operator==(const Bitstring&, const Bitstring&) = default;
  friend auto operator<=>(const Bitstring&, const Bitstring&) = default;

 private:
  std::uint64_t bits_ = 0;
  int length_ = 0;
};

struct BitstringHash {
  std::size_t operator()(const Bitstring& b) const noexcept {
    return std::hash<std::uint64_t>{}(b.bits()) ^
           (static_cast<std::size_t>(b.length()) << 58);
  }
};

/// Photon counts per output mode; collisions allowed.
struct OutputConfiguration {
  std::vector<int> counts;

  int modes() const { return static_cast<int>(counts.size()); }
  int photons() const;
  int max_occupation() const;
  bool collision_free() const { return max_occupation() <= 1; }
  /// Output-mode index repeated once per detected photon, ascending.
  std::vector<int> occupied_rows() const;
  /// Throws DomainError when the configuration has a collision.
  Bitstring to_bitstring() const;
  static OutputConfiguration from_bitstring(const Bitstring& b);
  std::string to_string() const;

  friend bool operator==(const OutputConfiguration&,
                         const OutputConfiguration&) = default;
};

/// Hamming (L1) distance via XOR + popcount. Throws DomainError when the
/// lengths differ.
int hamming_distance(const Bitstring& a, const Bitstring& b);

}  // namespace hamnet
