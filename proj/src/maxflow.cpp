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

#include "maxflow.hpp"

#include <deque>

namespace randassign::internal {

Rational FlowNetwork::MaxFlow(std::size_t source, std::size_t sink) {
  Rational total;
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  while (true) {
    std::vector<std::size_t> parent(n_, kUnseen);
    parent[source] = source;
    std::deque<std::size_t> queue{source};
    while (!queue.empty() && parent[sink] == kUnseen) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n_; ++v) {
        if (parent[v] == kUnseen && Residual(u, v).Sign() > 0) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[sink] == kUnseen) return total;
    Rational delta;
    bool first = true;
    for (std::size_t v = sink; v != source; v = parent[v]) {
      Rational r = Residual(parent[v], v);
      if (first || r < delta) delta = std::move(r);
      first = false;
    }
    for (std::size_t v = sink; v != source; v = parent[v]) {
      const std::size_t u = parent[v];
      // Cancel reverse flow first, then push forward.
      Rational cancel = Min(delta, flow_[v][u]);
      flow_[v][u] -= cancel;
      flow_[u][v] += delta - cancel;
    }
    total += delta;
  }
}

std::vector<bool> FlowNetwork::SourceSide(std::size_t source) const {
  std::vector<bool> seen(n_, false);
  seen[source] = true;
  std::deque<std::size_t> queue{source};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < n_; ++v) {
      if (!seen[v] && Residual(u, v).Sign() > 0) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace randassign::internal
