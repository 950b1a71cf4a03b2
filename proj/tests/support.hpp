#ifndef LATTICEROOT_TEST_SUPPORT_HPP
#define LATTICEROOT_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "latticeroot/lattice.hpp"
#include "latticeroot/plumbing.hpp"

namespace testsupport {

using namespace latticeroot;

// Floating-point eigenvalue count; independent of the exact congruence code.
struct EigenInertia {
  int pos = 0, neg = 0, zero = 0;
  int signature() const { return pos - neg; }
};

inline EigenInertia eigen_inertia(const Matrix<std::int64_t>& m) {
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = static_cast<double>(m(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  EigenInertia r;
  for (double ev : es.eigenvalues()) {
    if (ev > 1e-7) ++r.pos;
    else if (ev < -1e-7) ++r.neg;
    else ++r.zero;
  }
  return r;
}

inline PlumbingGraph random_tree(std::mt19937_64& rng, int max_vertices, int min_weight, int max_weight) {
  const int V = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_vertices));
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  const auto span = static_cast<unsigned>(max_weight - min_weight + 1);
  for (int i = 0; i < V; ++i) vs.push_back({i, min_weight + static_cast<std::int64_t>(rng() % span)});
  for (int i = 1; i < V; ++i) es.emplace_back(static_cast<int>(rng() % static_cast<unsigned>(i)), i);
  return build_graph(vs, es);
}

// Negative-definite star-shaped trees with at most 6 vertices and weights in
// [-7,-1], drawn from a fixed seed.
inline std::vector<PlumbingGraph> star_corpus(std::size_t count, std::uint64_t seed = 20240601) {
  std::mt19937_64 rng(seed);
  std::vector<PlumbingGraph> out;
  while (out.size() < count) {
    auto g = random_tree(rng, 6, -7, -1);
    if (g.is_star_shaped() && is_negative_definite(g)) out.push_back(std::move(g));
  }
  return out;
}

// Same graph with ids relabelled by a permutation.
inline PlumbingGraph relabel(const PlumbingGraph& g, const std::vector<int>& new_id) {
  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < g.size(); ++i) vs.push_back({new_id[i], g.weight(i)});
  std::vector<Edge> es;
  for (auto [a, b] : g.edges()) es.emplace_back(new_id[g.index_of(a)], new_id[g.index_of(b)]);
  return build_graph(vs, es);
}

}  // namespace testsupport

#endif
