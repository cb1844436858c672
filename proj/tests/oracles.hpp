#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <deque>
#include <map>
#include <vector>

#include "hecke/affweyl.hpp"

namespace hecke::oracle {

// Word-length distances in the Cayley graph on the affine simple reflections
// (weight 1) and the Omega generators and their inverses (weight 0), explored
// inside a lambda-box of radius `box`. 0-1 BFS; elements outside the box are
// not expanded, so callers must keep box comfortably larger than the radius
// they trust. Returns distances for all reached elements.
inline std::map<AffWeylElt, int> cayley_distances(const LeviContext* ctx,
                                                  int maxDist, int box) {
  std::map<AffWeylElt, int> dist;
  std::deque<AffWeylElt> dq;
  AffWeylElt id = ctx->identity();
  dist[id] = 0;
  dq.push_back(id);
  auto inBox = [&](const AffWeylElt& x) {
    for (int v : x.lambda)
      if (v < -box || v > box) return false;
    return true;
  };
  std::vector<std::pair<AffWeylElt, int>> steps;  // (generator, weight)
  for (const auto& s : ctx->simples()) steps.push_back({s.elt, 1});
  for (const auto& u : ctx->omegaGens()) {
    steps.push_back({u, 0});
    steps.push_back({ctx->inverse(u), 0});
  }
  while (!dq.empty()) {
    AffWeylElt cur = dq.front();
    dq.pop_front();
    int d = dist[cur];
    if (d > maxDist) continue;
    for (const auto& [g, w] : steps) {
      for (AffWeylElt nxt : {ctx->mult(cur, g), ctx->mult(g, cur)}) {
        if (!inBox(nxt)) continue;
        int nd = d + w;
        auto it = dist.find(nxt);
        if (it != dist.end() && it->second <= nd) continue;
        dist[nxt] = nd;
        if (w == 0)
          dq.push_front(nxt);
        else
          dq.push_back(nxt);
      }
    }
  }
  return dist;
}

}  // namespace hecke::oracle
