// Copyright 2026 The nestedvi Authors
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

#include "nestedvi/random.hpp"

#include <cmath>
#include <numbers>

namespace nvi {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& word : state_) word = splitmix64(seed);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // 1 - u lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void Rng::jump() {
  static constexpr std::array<std::uint64_t, 4> kJump = {
      0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
      0x39abdc4529b1661cULL};
  std::array<std::uint64_t, 4> acc{};
  for (const std::uint64_t word : kJump) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b))
        for (int i = 0; i < 4; ++i) acc[i] ^= state_[i];
      next();
    }
  }
  state_ = acc;
}

Vector Rng::uniform_vector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform();
  return v;
}

Vector Rng::normal_vector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
  return v;
}

namespace {

Vector unit_direction(Eigen::Index n, Rng& rng) {
  Vector d = rng.normal_vector(n);
  double norm = d.norm();
  while (norm == 0.0) {
    d = rng.normal_vector(n);
    norm = d.norm();
  }
  return d / norm;
}

}  // namespace

Vector sample_member(const FeasibleSet& set, Rng& rng) {
  const Eigen::Index n = set.dim();
  if (const auto* ball = std::get_if<Ball>(&set.variant())) {
    const double r = ball->radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
    return ball->center + r * unit_direction(n, rng);
  }
  if (const auto* box = std::get_if<Box>(&set.variant())) {
    const Vector u = rng.uniform_vector(n);
    return box->lower + (box->upper - box->lower).cwiseProduct(u);
  }
  const auto& simplex = std::get<Simplex>(set.variant());
  Vector e(n);
  for (Eigen::Index i = 0; i < n; ++i) e[i] = -std::log(1.0 - rng.uniform());
  const double total = e.sum();
  if (total == 0.0) return set.center();
  return simplex.scale * e / total;
}

Vector sample_boundary(const FeasibleSet& set, Rng& rng) {
  const Vector d = unit_direction(set.dim(), rng);
  if (const auto* ball = std::get_if<Ball>(&set.variant()))
    return ball->center + ball->radius * d;
  return set.project(set.center() + (2.0 * set.diameter() + 1.0) * d);
}

}  // namespace nvi
