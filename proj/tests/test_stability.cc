// Copyright 2026 The cochlear-bank Authors.
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

#include <doctest.h>

#include "support/lemmas.hpp"

TEST_SUITE("stability") {

TEST_CASE("additive noise moves every channel by at most C1 times the l1 change") {
  const auto o = lemmas::continuity(lemmas::bank(), 1000, 101);
  MESSAGE("worst lhs/rhs = " << o.worst_ratio);
  CHECK(o.trials == 1000);
  CHECK(o.violations == 0);
}

TEST_CASE("smooth pointwise warps obey the derivative bound") {
  const auto o = lemmas::pointwise_warp(lemmas::bank(), 200, 202);
  MESSAGE("worst lhs/rhs = " << o.worst_ratio);
  CHECK(o.violations == 0);
}

TEST_CASE("temporal averages are stable under smooth warps") {
  const auto o = lemmas::averaged_warp(lemmas::bank(), 200, 303);
  MESSAGE("worst lhs/rhs = " << o.worst_ratio);
  CHECK(o.violations == 0);
}

}  // TEST_SUITE
