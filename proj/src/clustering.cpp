#include "mstates/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "mstates/error.hpp"

namespace mstates {

namespace {

void validate_distances(const Eigen::MatrixXd& d) {
  const Eigen::Index k = d.rows();
  if (d.cols() != k) throw ValidationError("ward_linkage: distance matrix not square");
  if (k < 2) throw ValidationError("ward_linkage: need at least 2 observations");
  for (Eigen::Index i = 0; i < k; ++i) {
    if (d(i, i) != 0.0)
      throw ValidationError("ward_linkage: non-zero diagonal at " + std::to_string(i));
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double a = d(i, j);
      if (!std::isfinite(a) || a < 0.0)
        throw ValidationError("ward_linkage: negative or non-finite distance at (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
      if (a != d(j, i))
        throw ValidationError("ward_linkage: asymmetric distance at (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }
}

}  // namespace

Dendrogram ward_linkage(const Eigen::MatrixXd& distances) {
  validate_distances(distances);
  const Eigen::Index k = distances.rows();
  const auto leaves = static_cast<std::size_t>(k);

  Eigen::MatrixXd d2 = distances.cwiseProduct(distances);
  std::vector<std::size_t> node(leaves);
  std::iota(node.begin(), node.end(), std::size_t{1});
  std::vector<std::size_t> size(leaves, 1);
  std::vector<Eigen::Index> active(leaves);
  std::iota(active.begin(), active.end(), Eigen::Index{0});

  Dendrogram out;
  out.leaf_count = leaves;
  out.merges.reserve(leaves - 1);

  for (std::size_t step = 0; step + 1 < leaves; ++step) {
    double min_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < active.size(); ++a)
      for (std::size_t b = a + 1; b < active.size(); ++b)
        min_d2 = std::min(min_d2, d2(active[a], active[b]));

    // Among near-minimal pairs pick the smallest (low id, high id).
    const double limit = min_d2 + kWardTieTolerance * min_d2;
    std::size_t best_a = 0, best_b = 0;
    std::pair<std::size_t, std::size_t> best_ids{
        std::numeric_limits<std::size_t>::max(), 0};
    for (std::size_t a = 0; a < active.size(); ++a)
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        if (d2(active[a], active[b]) > limit) continue;
        const std::size_t na = node[static_cast<std::size_t>(active[a])];
        const std::size_t nb = node[static_cast<std::size_t>(active[b])];
        const std::pair ids{std::min(na, nb), std::max(na, nb)};
        if (ids < best_ids) {
          best_ids = ids;
          best_a = a;
          best_b = b;
        }
      }

    const Eigen::Index i = active[best_a];
    const Eigen::Index j = active[best_b];
    const auto si = static_cast<double>(size[static_cast<std::size_t>(i)]);
    const auto sj = static_cast<double>(size[static_cast<std::size_t>(j)]);
    const double dij = d2(i, j);

    Merge merge;
    merge.left = best_ids.first;
    merge.right = best_ids.second;
    merge.height = std::sqrt(dij);
    merge.size = size[static_cast<std::size_t>(i)] + size[static_cast<std::size_t>(j)];
    out.merges.push_back(merge);

    // Lance-Williams update; the merged cluster lives in slot i.
    for (const Eigen::Index m : active) {
      if (m == i || m == j) continue;
      const auto sm = static_cast<double>(size[static_cast<std::size_t>(m)]);
      const double updated =
          ((si + sm) * d2(i, m) + (sj + sm) * d2(j, m) - sm * dij) /
          (si + sj + sm);
      const double clamped = std::max(0.0, updated);
      d2(i, m) = clamped;
      d2(m, i) = clamped;
    }
    node[static_cast<std::size_t>(i)] = leaves + 1 + step;
    size[static_cast<std::size_t>(i)] = merge.size;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
  }
  return out;
}

Dendrogram ward_linkage(const EpochDistanceMatrix& xi) {
  return ward_linkage(xi.values);
}

std::vector<std::size_t> cut(const Dendrogram& dendrogram, std::size_t n) {
  const std::size_t k = dendrogram.leaf_count;
  if (n < 1 || n > k)
    throw ValidationError("cut: cluster count " + std::to_string(n) +
                          " outside [1, " + std::to_string(k) + "]");
  if (dendrogram.merges.size() + 1 != k)
    throw ValidationError("cut: dendrogram has the wrong number of merges");

  // Union-find over node ids 1..2K-1.
  std::vector<std::size_t> parent(2 * k, 0);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t m = 0; m < k - n; ++m) {
    const auto& merge = dendrogram.merges[m];
    const std::size_t created = k + 1 + m;
    if (merge.left == 0 || merge.right == 0 || merge.left >= created ||
        merge.right >= created)
      throw ValidationError("cut: merge " + std::to_string(m) +
                            " references an invalid node");
    parent[find(merge.left)] = created;
    parent[find(merge.right)] = created;
  }

  std::map<std::size_t, std::size_t> label_of_root;
  std::vector<std::size_t> labels(k);
  for (std::size_t leaf = 1; leaf <= k; ++leaf) {
    const std::size_t root = find(leaf);
    auto [it, inserted] = label_of_root.emplace(root, label_of_root.size() + 1);
    labels[leaf - 1] = it->second;
  }
  return labels;
}

MarketStateModel build_market_states(std::span<const std::size_t> labels,
                                     std::span<const CorrelationMatrix> matrices) {
  if (labels.size() != matrices.size())
    throw ValidationError("build_market_states: " + std::to_string(labels.size()) +
                          " labels for " + std::to_string(matrices.size()) +
                          " matrices");
  if (matrices.empty()) throw ValidationError("build_market_states: no epochs");
  const Eigen::Index n = matrices.front().size();
  for (const auto& m : matrices)
    if (m.kind != matrices.front().kind || m.size() != n)
      throw ValidationError("build_market_states: matrices differ in kind or size");

  struct Group {
    std::size_t first_epoch = 0;
    std::vector<std::size_t> members;
    Eigen::MatrixXd average;
    double mean = 0.0;
  };
  std::map<std::size_t, Group> groups;
  for (std::size_t e = 0; e < labels.size(); ++e) {
    if (labels[e] == 0) throw ValidationError("build_market_states: label 0 is reserved");
    auto [it, inserted] = groups.try_emplace(labels[e]);
    if (inserted) it->second.first_epoch = e;
    it->second.members.push_back(e);
  }

  std::vector<Group*> order;
  for (auto& [id, g] : groups) {
    g.average = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t e : g.members) g.average += matrices[e].values;
    g.average /= static_cast<double>(g.members.size());
    g.mean = mean_off_diagonal(g.average);
    order.push_back(&g);
  }
  std::sort(order.begin(), order.end(), [](const Group* a, const Group* b) {
    if (a->mean != b->mean) return a->mean < b->mean;
    return a->first_epoch < b->first_epoch;
  });

  MarketStateModel model;
  model.kind = matrices.front().kind;
  model.n_states = order.size();
  model.tickers = matrices.front().tickers;
  model.labels.assign(labels.size(), 0);
  for (std::size_t s = 0; s < order.size(); ++s) {
    for (std::size_t e : order[s]->members) model.labels[e] = s + 1;
    model.state_means.push_back(order[s]->mean);
    model.state_matrices.push_back(std::move(order[s]->average));
    model.state_sizes.push_back(order[s]->members.size());
  }
  return model;
}

TransitionMatrix transitions(std::span<const std::size_t> labels,
                             std::size_t n_states) {
  if (labels.size() < 2)
    throw ValidationError("transitions need at least 2 epochs");
  if (n_states == 0) n_states = *std::max_element(labels.begin(), labels.end());
  for (std::size_t label : labels)
    if (label < 1 || label > n_states)
      throw ValidationError("transition label " + std::to_string(label) +
                            " outside [1, " + std::to_string(n_states) + "]");
  TransitionMatrix out;
  const auto n = static_cast<Eigen::Index>(n_states);
  out.counts = Eigen::Matrix<std::size_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (std::size_t t = 0; t + 1 < labels.size(); ++t)
    ++out.counts(static_cast<Eigen::Index>(labels[t] - 1),
                 static_cast<Eigen::Index>(labels[t + 1] - 1));
  return out;
}

}  // namespace mstates
