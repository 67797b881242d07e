// Copyright 2026 The randassign Authors
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

// Dense Edmonds-Karp over exact rationals; networks here have at most a few
// dozen nodes.

#include <cstddef>
#include <vector>

#include "randassign/rational.hpp"

namespace randassign::internal {

class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes)
      : n_(nodes),
        cap_(nodes, std::vector<Rational>(nodes)),
        flow_(nodes, std::vector<Rational>(nodes)) {}

  void SetCapacity(std::size_t u, std::size_t v, const Rational& c) {
    cap_[u][v] = c;
  }
  Rational MaxFlow(std::size_t source, std::size_t sink);
  const Rational& Flow(std::size_t u, std::size_t v) const { return flow_[u][v]; }
  /// Nodes reachable from the source in the final residual graph.
  std::vector<bool> SourceSide(std::size_t source) const;

 private:
  Rational Residual(std::size_t u, std::size_t v) const {
    return cap_[u][v] - flow_[u][v] + flow_[v][u];
  }

  std::size_t n_;
  std::vector<std::vector<Rational>> cap_;
  std::vector<std::vector<Rational>> flow_;
};

}  // namespace randassign::internal
