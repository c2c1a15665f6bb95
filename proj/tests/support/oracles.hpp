#pragma once

// Independent oracles shared by unit and acceptance tests.

#include "toral/groupalg.hpp"

#include <string>
#include <vector>

namespace toral::testing {

struct NamedRep {
  std::string name;
  IntegralRep rep;
  IntMatrix generator;  // image of the cyclic generator
};

// Blocks for a cyclic group of order n: trivial, sign, swap, a non-split
// 2-block, and rotations of every order d in {3, 4, 6} dividing n.
inline std::vector<std::pair<std::string, IntMatrix>> cyclic_blocks(int n) {
  std::vector<std::pair<std::string, IntMatrix>> b{{"triv", int_matrix({{1}})}};
  if (n % 2 == 0) {
    b.push_back({"sign", int_matrix({{-1}})});
    b.push_back({"swap", int_matrix({{0, 1}, {1, 0}})});
    b.push_back({"shear", int_matrix({{1, 1}, {0, -1}})});
  }
  if (n % 3 == 0) b.push_back({"rot3", int_matrix({{0, -1}, {1, -1}})});
  if (n % 4 == 0) b.push_back({"rot4", int_matrix({{0, -1}, {1, 0}})});
  if (n % 6 == 0) b.push_back({"rot6", int_matrix({{1, -1}, {1, 0}})});
  return b;
}

inline IntMatrix block_diag(const std::vector<IntMatrix>& blocks) {
  Eigen::Index r = 0;
  for (const auto& b : blocks) r += b.rows();
  IntMatrix m = IntMatrix::Zero(r, r);
  Eigen::Index o = 0;
  for (const auto& b : blocks) {
    m.block(o, o, b.rows(), b.cols()) = b;
    o += b.rows();
  }
  return m;
}

// Every multiset of blocks with total rank 1..max_rank.
inline std::vector<NamedRep> block_built_reps(int n, int max_rank) {
  auto g = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n));
  auto blocks = cyclic_blocks(n);
  std::vector<NamedRep> out;
  std::vector<size_t> chosen;
  auto rec = [&](auto&& self, size_t start, int rank) -> void {
    if (rank > 0) {
      std::vector<IntMatrix> mats;
      std::string name;
      for (size_t i : chosen) {
        mats.push_back(blocks[i].second);
        name += (name.empty() ? "" : "+") + blocks[i].first;
      }
      IntMatrix gen = block_diag(mats);
      out.push_back({"C" + std::to_string(n) + ":" + name, IntegralRep::from_generators(g, rank, {gen}), gen});
    }
    for (size_t i = start; i < blocks.size(); ++i) {
      const int br = static_cast<int>(blocks[i].second.rows());
      if (rank + br > max_rank) continue;
      chosen.push_back(i);
      self(self, i, rank + br);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Closed forms for cyclic groups: H^0 = M^W, H^{2k} = M^W / N M, H^{2k+1} = ker N / (s - 1) M.
inline FiniteAbelianGroup periodic_cohomology(const IntMatrix& s, int order, int degree) {
  const Eigen::Index r = s.rows();
  IntMatrix norm = IntMatrix::Zero(r, r), power = identity_matrix(r);
  for (int i = 0; i < order; ++i) {
    norm += power;
    power = power * s;
  }
  IntMatrix moved = s - identity_matrix(r);
  IntMatrix fixed_gens = integer_kernel(moved);
  Lattice fixed = fixed_gens.cols() ? Lattice::from_generators(fixed_gens) : Lattice(static_cast<int>(r));
  if (degree == 0) return FiniteAbelianGroup{{}, fixed.rank()};
  if (degree % 2 == 0) return quotient_invariants(image(norm, Lattice::full(static_cast<int>(r))), fixed);
  IntMatrix ker_gens = integer_kernel(norm);
  Lattice ker = ker_gens.cols() ? Lattice::from_generators(ker_gens) : Lattice(static_cast<int>(r));
  return quotient_invariants(image(moved, Lattice::full(static_cast<int>(r))), ker);
}

}  // namespace toral::testing
