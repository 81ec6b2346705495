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

#include "hamnet/bitstring.hpp"

#include <algorithm>

#include "hamnet/error.hpp"

namespace hamnet {

Bitstring::Bitstring(std::uint64_t bits, int length)
    : bits_(bits), length_(length) {
  if (length < 0 || length > kMaxLength) {
    throw DomainError("bitstring length " + std::to_string(length) +
                      " outside [0, 64]");
  }
  if (length < kMaxLength && (bits >> length) != 0) {
    throw DomainError("bitstring has bits set beyond its length");
  }
}

Bitstring Bitstring::from_modes(std::span<const int> modes, int length) {
  std::uint64_t bits = 0;
  for (int mode : modes) {
    if (mode < 0 || mode >= length) {
      throw DomainError("mode " + std::to_string(mode) +
                        " outside bitstring of length " +
                        std::to_string(length));
    }
    bits |= std::uint64_t{1} << mode;
  }
  return Bitstring(bits, length);
}

Bitstring Bitstring::parse(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kMaxLength)) {
    throw DomainError("bitstring longer than 64 modes");
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= std::uint64_t{1} << i;
    } else if (text[i] != '0') {
      throw DomainError("bitstring contains character other than 0/1: '" +
                        std::string(text) + "'");
    }
  }
  return Bitstring(bits, static_cast<int>(text.size()));
}

std::vector<int> Bitstring::modes() const {
  std::vector<int> out;
  out.reserve(weight());
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

std::string Bitstring::to_string() const {
  std::string out(length_, '0');
  for (int i = 0; i < length_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

int OutputConfiguration::photons() const {
  int total = 0;
  for (int c : counts) total += c;
  return total;
}

int OutputConfiguration::max_occupation() const {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

std::vector<int> OutputConfiguration::occupied_rows() const {
  std::vector<int> rows;
  for (int mode = 0; mode < modes(); ++mode) {
    for (int k = 0; k < counts[mode]; ++k) rows.push_back(mode);
  }
  return rows;
}

Bitstring OutputConfiguration::to_bitstring() const {
  if (!collision_free()) {
    throw DomainError("configuration " + to_string() +
                      " has a collision; no bitstring form");
  }
  const std::vector<int> rows = occupied_rows();
  return Bitstring::from_modes(rows, modes());
}

OutputConfiguration OutputConfiguration::from_bitstring(const Bitstring& b) {
  OutputConfiguration out;
  out.counts.resize(b.length());
  for (int i = 0; i < b.length(); ++i) out.counts[i] = b.test(i) ? 1 : 0;
  return out;
}

std::string OutputConfiguration::to_string() const {
  std::string out = "(";
  for (int i = 0; i < modes(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts[i]);
  }
  return out + ")";
}

int hamming_distance(const Bitstring& a, const Bitstring& b) {
  if (a.length() != b.length()) {
    throw DomainError("hamming_distance: length mismatch (" +
                      std::to_string(a.length()) + " vs " +
                      std::to_string(b.length()) + ")");
  }
  return std::popcount(a.bits() ^ b.bits());
}

}  // namespace hamnet
