#pragma once

// Random valid Eggers-Wall trees for property tests. Trees are grown
// top-down as a laminar family of splits with strictly increasing
// valuations; splits happen either at a lattice point of the current
// shared lattice or at a fresh characteristic exponent, so every sample
// satisfies the full validation (total order, ultrametric, shared prefix,
// lattice realizability).

#include <qopolar/eggers_wall.hpp>
#include <qopolar/lattice.hpp>
#include <qopolar/qvec.hpp>

#include <optional>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace qtest {

using qopolar::BranchData;
using qopolar::EggersWallTree;
using qopolar::Lattice;

class TreeGen {
 public:
  TreeGen(Rng& rng, std::size_t d) : rng_(rng), d_(d) {}

  EggersWallTree generate(int max_branches) {
    branches_.clear();
    contact_.clear();
    grow(max_branches, Lattice::standard(d_), {}, QVec::zero(d_), 0);
    std::size_t s = branches_.size();
    std::vector<std::vector<QVec>> contact(s, std::vector<QVec>(s, QVec::infinity(d_)));
    for (const auto& [pair, v] : contact_) {
      contact[pair.first][pair.second] = v;
      contact[pair.second][pair.first] = v;
    }
    return EggersWallTree(branches_, contact, Lattice::standard(d_));
  }

 private:
  QVec bump(const QVec& low, long den_cap) {
    std::vector<Rat> c(d_);
    for (std::size_t i = 0; i < d_; ++i)
      c[i] = (low.is_finite() ? low[i] : Rat(0)) + rng_.pos_rat(3, den_cap);
    return QVec(std::move(c));
  }

  std::optional<QVec> next_non_lattice(const Lattice& m, const QVec& low) {
    for (int tries = 0; tries < 24; ++tries) {
      QVec v = bump(low, 4);
      if (!m.contains(v)) return v;
    }
    return std::nullopt;
  }

  QVec next_lattice_point(const QVec& low) {
    // integer vectors are in every lattice we build
    std::vector<Rat> c(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      qopolar::Int f = qopolar::floor_int(low[i]);
      c[i] = Rat(f) + Rat(rng_.pick(1, 2));
    }
    return QVec(std::move(c));
  }

  std::size_t make_branch(const std::vector<QVec>& exps) {
    BranchData b;
    b.name = "f" + std::to_string(branches_.size() + 1);
    b.exponents = exps;
    Lattice m = Lattice::standard(d_);
    qopolar::Int deg(1);
    for (const auto& lam : exps) {
      Lattice next = m.extend(lam);
      deg *= m.index_in(next);
      m = next;
    }
    b.degree = deg;
    branches_.push_back(std::move(b));
    return branches_.size() - 1;
  }

  std::vector<std::size_t> grow(int budget, Lattice m, std::vector<QVec> prefix, QVec low,
                                int depth) {
    if (budget <= 1 || depth >= 3 || rng_.pick(0, 3) == 0) {
      // finish one branch, possibly with extra private exponents
      int extra = static_cast<int>(rng_.pick(0, 2));
      for (int t = 0; t < extra; ++t) {
        auto v = next_non_lattice(m, low);
        if (!v) break;
        prefix.push_back(*v);
        m = m.extend(*v);
        low = *v;
      }
      return {make_branch(prefix)};
    }
    if (rng_.pick(0, 2) == 0) {
      // shared characteristic exponent for the whole subtree
      auto v = next_non_lattice(m, low);
      if (v) return grow(budget, m.extend(*v), with(prefix, *v), *v, depth + 1);
    }
    // split into two groups, either at a lattice point or at a fresh
    // exponent carried by every group except possibly the first
    int left = static_cast<int>(rng_.pick(1, budget - 1));
    int right = budget - left;
    bool lattice_split = rng_.pick(0, 1) == 0;
    QVec v;
    if (lattice_split) {
      v = next_lattice_point(low);
    } else {
      auto nv = next_non_lattice(m, low);
      if (!nv) {
        lattice_split = true;
        v = next_lattice_point(low);
      } else {
        v = *nv;
      }
    }
    std::vector<std::size_t> a, b;
    if (lattice_split) {
      a = grow(left, m, prefix, v, depth + 1);
      b = grow(right, m, prefix, v, depth + 1);
    } else {
      bool first_skips = rng_.pick(0, 1) == 0;
      Lattice ext = m.extend(v);
      auto carried = with(prefix, v);
      a = first_skips ? grow(left, m, prefix, v, depth + 1)
                      : grow(left, ext, carried, v, depth + 1);
      b = grow(right, ext, carried, v, depth + 1);
    }
    for (auto x : a)
      for (auto y : b) contact_[{std::min(x, y), std::max(x, y)}] = v;
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  static std::vector<QVec> with(std::vector<QVec> v, const QVec& x) {
    v.push_back(x);
    return v;
  }

  Rng& rng_;
  std::size_t d_;
  std::vector<BranchData> branches_;
  std::map<std::pair<std::size_t, std::size_t>, QVec> contact_;
};

}  // namespace qtest
