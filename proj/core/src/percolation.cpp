#include "minorlab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "minorlab/errors.hpp"
#include "minorlab/numerics.hpp"

namespace minorlab {

double RatePolicy::rate(int i, int j, int m, int n) const {
  switch (case_id) {
    case 1:
      return 1.0 - a.at(j) / std::sqrt(static_cast<double>(m));
    case 2:
      return -a.at(j);
    case 3:
    case 4:
      return static_cast<double>(i + 1 + alpha.at(j));
    case 0:
      return explicit_rates.at(static_cast<size_t>(i) * n + j);
    default:
      throw ArgumentError("RatePolicy: unknown case");
  }
}

std::string RatePolicy::name() const {
  switch (case_id) {
    case 1: return "case1";
    case 2: return "case2";
    case 3: return "case3";
    case 4: return "case4";
    default: return "explicit";
  }
}

LatticeWeights sample_exp_lattice(int m, int n, const RatePolicy& policy, RngStream& stream) {
  if (m < 1 || n < 1) throw ArgumentError("sample_exp_lattice: empty lattice");
  LatticeWeights lat;
  lat.m = m;
  lat.n = n;
  lat.policy = policy;
  lat.w.resize(static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = policy.rate(i, j, m, n);
      if (!(r > 0.0)) throw ArgumentError("sample_exp_lattice: rates must be positive");
      lat.at(i, j) = stream.exponential(r);
    }
  }
  return lat;
}

LatticeWeights sample_geometric_lattice(const std::vector<double>& s,
                                        const std::vector<double>& t, RngStream& stream) {
  const int m = static_cast<int>(s.size());
  const int n = static_cast<int>(t.size());
  if (m < 1 || n < 1) throw ArgumentError("sample_geometric_lattice: empty lattice");
  LatticeWeights lat;
  lat.m = m;
  lat.n = n;
  lat.policy.case_id = 0;
  lat.policy.explicit_rates.assign(static_cast<size_t>(m) * n, 0.0);
  lat.w.resize(static_cast<size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double q = s[i] * t[j];
      if (!(q > 0.0 && q < 1.0)) {
        throw ArgumentError("sample_geometric_lattice: need 0 < s_i t_j < 1");
      }
      lat.policy.explicit_rates[static_cast<size_t>(i) * n + j] = q;
      lat.at(i, j) = static_cast<double>(stream.geometric(q));
    }
  }
  return lat;
}

namespace {

// Longest single chain; with nonnegative weights the corner-to-corner
// up-right path dominates.
double single_path_dp(const LatticeWeights& lat) {
  std::vector<double> row(lat.n, 0.0);
  for (int i = 0; i < lat.m; ++i) {
    for (int j = 0; j < lat.n; ++j) {
      const double up = i > 0 ? row[j] : 0.0;
      const double left = j > 0 ? row[j - 1] : 0.0;
      row[j] = lat.at(i, j) + std::max(up, left);
    }
  }
  return row[lat.n - 1];
}

// Min-cost flow on the bypass-arc network: each site has a unit-capacity
// "collect" arc with cost -w and an uncapacitated zero-cost bypass, so
// disjoint chains may interleave without sharing collected sites.
class ChainFlow {
public:
  explicit ChainFlow(const LatticeWeights& lat) : m_(lat.m), n_(lat.n) {
    const int sites = m_ * n_;
    node_count_ = 2 + 2 * sites;
    source_ = 0;
    sink_ = 1;
    graph_.assign(node_count_, {});
    const int big = sites + 1;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const int in = in_node(i, j);
        const int out = in + 1;
        add_edge(source_, in, big, 0.0);
        add_edge(in, out, 1, -lat.at(i, j));  // collect
        add_edge(in, out, big, 0.0);          // bypass
        if (i + 1 < m_) add_edge(out, in_node(i + 1, j), big, 0.0);
        if (j + 1 < n_) add_edge(out, in_node(i, j + 1), big, 0.0);
        add_edge(out, sink_, big, 0.0);
      }
    }
    potentials_.assign(node_count_, 0.0);
    init_potentials();
  }

  // Sends one more unit; returns the cost of that augmentation.
  double augment() {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(node_count_, inf);
    std::vector<int> prev_edge(node_count_, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source_] = 0.0;
    pq.emplace(0.0, source_);
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u] + 1e-12) continue;
      for (int id : graph_[u]) {
        const Edge& e = edges_[id];
        if (e.cap <= e.flow) continue;
        const double nd = dist[u] + e.cost + potentials_[u] - potentials_[e.to];
        if (nd < dist[e.to] - 1e-12) {
          dist[e.to] = nd;
          prev_edge[e.to] = id;
          pq.emplace(nd, e.to);
        }
      }
    }
    if (prev_edge[sink_] < 0) return 0.0;  // saturated: only empty chains remain
    for (int v = 0; v < node_count_; ++v) {
      if (dist[v] < inf) potentials_[v] += dist[v];
    }
    double cost = 0.0;
    for (int v = sink_; v != source_;) {
      Edge& e = edges_[prev_edge[v]];
      e.flow += 1;
      edges_[prev_edge[v] ^ 1].flow -= 1;
      cost += e.cost;
      v = e.from;
    }
    return cost;
  }

private:
  struct Edge {
    int from, to, cap, flow;
    double cost;
  };

  int in_node(int i, int j) const { return 2 + 2 * (i * n_ + j); }

  void add_edge(int from, int to, int cap, double cost) {
    graph_[from].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, to, cap, 0, cost});
    graph_[to].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, from, 0, 0, -cost});
  }

  // One Bellman pass in topological order (the network is a DAG).
  void init_potentials() {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(node_count_, inf);
    dist[source_] = 0.0;
    auto relax_node = [&](int u) {
      if (dist[u] == inf) return;
      for (int id : graph_[u]) {
        const Edge& e = edges_[id];
        if (e.cap > 0 && dist[u] + e.cost < dist[e.to]) dist[e.to] = dist[u] + e.cost;
      }
    };
    relax_node(source_);
    for (int diag = 0; diag <= m_ + n_ - 2; ++diag) {
      for (int i = std::max(0, diag - n_ + 1); i <= std::min(diag, m_ - 1); ++i) {
        const int j = diag - i;
        relax_node(in_node(i, j));
        relax_node(in_node(i, j) + 1);
      }
    }
    for (int v = 0; v < node_count_; ++v) {
      potentials_[v] = dist[v] == inf ? 0.0 : dist[v];
    }
  }

  int m_, n_;
  int node_count_, source_, sink_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> graph_;
  std::vector<double> potentials_;
};

} // namespace

double last_passage(const LatticeWeights& weights, int l) {
  if (l < 1) throw ArgumentError("last_passage: need l >= 1");
  for (double w : weights.w) {
    if (!(w >= 0.0)) throw ArgumentError("last_passage: weights must be nonnegative");
  }
  if (l == 1) return single_path_dp(weights);
  const int lmax = std::min({l, weights.m, weights.n});
  ChainFlow flow(weights);
  double total = 0.0;
  for (int k = 0; k < lmax; ++k) total -= flow.augment();
  return total;
}

ShapeVector shape_vector(const LatticeWeights& weights) {
  ShapeVector shape;
  shape.origin_m = weights.m;
  shape.origin_n = weights.n;
  shape.entries.assign(weights.n, 0.0);
  const int lmax = std::min(weights.m, weights.n);
  ChainFlow flow(weights);
  for (int k = 0; k < lmax; ++k) {
    shape.entries[k] = -flow.augment();
  }
  return shape;
}

std::vector<std::vector<double>> scaled_limit(int case_id, const std::vector<ShapeVector>& shapes,
                                              int big_m) {
  std::vector<std::vector<double>> out;
  out.reserve(shapes.size());
  const double sqrt_m = std::sqrt(static_cast<double>(big_m));
  for (const auto& shape : shapes) {
    if (shape.origin_m != big_m) {
      throw CaseMismatchError("scaled_limit: shape row count does not match M");
    }
    std::vector<double> nu(shape.entries.size());
    for (size_t i = 0; i < nu.size(); ++i) {
      const double mu = shape.entries[i];
      switch (case_id) {
        case 1: nu[i] = (mu - big_m) / sqrt_m; break;
        case 2: nu[i] = mu; break;
        case 3: nu[i] = big_m * std::exp(-mu); break;
        case 4: nu[i] = std::exp(-mu); break;
        default: throw CaseMismatchError("scaled_limit: unknown case");
      }
    }
    out.push_back(std::move(nu));
  }
  return out;
}

namespace {

double schur_bialternant(const std::vector<long long>& kappa, const std::vector<double>& x) {
  const int m = static_cast<int>(x.size());
  std::vector<double> num(static_cast<size_t>(m) * m), den(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const long long kj = j < static_cast<int>(kappa.size()) ? kappa[j] : 0;
      num[static_cast<size_t>(i) * m + j] = std::pow(x[i], static_cast<double>(kj + m - 1 - j));
      den[static_cast<size_t>(i) * m + j] = std::pow(x[i], static_cast<double>(m - 1 - j));
    }
  }
  const double d = lu_det(den, m);
  if (d == 0.0) throw DegenerateError("schur_poly: coincident evaluation points");
  return lu_det(num, m) / d;
}

} // namespace

double schur_poly(const std::vector<long long>& kappa, const std::vector<double>& x,
                  bool allow_perturbation) {
  if (kappa.size() > x.size()) {
    throw ArgumentError("schur_poly: partition has more parts than variables");
  }
  for (size_t i = 1; i < kappa.size(); ++i) {
    if (kappa[i] > kappa[i - 1]) throw ArgumentError("schur_poly: not a partition");
  }
  for (double xi : x) {
    if (!(xi > 0.0)) throw ArgumentError("schur_poly: variables must be positive");
  }
  bool coincident = false;
  for (size_t i = 0; i < x.size() && !coincident; ++i) {
    for (size_t j = i + 1; j < x.size(); ++j) {
      if (std::abs(x[i] - x[j]) < 1e-10) {
        coincident = true;
        break;
      }
    }
  }
  if (!coincident) return schur_bialternant(kappa, x);
  if (!allow_perturbation) throw DegenerateError("schur_poly: coincident variables");

  // index-proportional perturbation, one Richardson step: value is smooth in
  // x so s(eps) = s + c*eps + O(eps^2)
  auto eval = [&](double eps) {
    std::vector<double> xp(x);
    for (size_t i = 0; i < xp.size(); ++i) xp[i] += eps * static_cast<double>(i + 1);
    return schur_bialternant(kappa, xp);
  };
  const double eps = 1e-7;
  return 2.0 * eval(0.5 * eps) - eval(eps);
}

double schur_transition(const std::vector<long long>& kappa_prev,
                        const std::vector<long long>& kappa, const std::vector<double>& s,
                        double t_n) {
  if (!(t_n > 0.0 && t_n < 1.0)) throw ArgumentError("schur_transition: t_n must be in (0,1)");
  // interlacing of partitions: kappa_prev_i between kappa_{i+1} and kappa_i
  for (size_t i = 0; i < kappa_prev.size(); ++i) {
    const long long hi = i < kappa.size() ? kappa[i] : 0;
    const long long lo = i + 1 < kappa.size() ? kappa[i + 1] : 0;
    if (!(lo <= kappa_prev[i] && kappa_prev[i] <= hi)) return 0.0;
  }
  for (size_t i = kappa_prev.size() + 1; i < kappa.size(); ++i) {
    if (kappa[i] != 0) return 0.0;
  }
  double prefactor = 1.0;
  for (double si : s) {
    const double q = si * t_n;
    if (!(q > 0.0 && q < 1.0)) throw ArgumentError("schur_transition: need s_i t_n in (0,1)");
    prefactor *= 1.0 - q;
  }
  long long sum_k = 0, sum_prev = 0;
  for (long long k : kappa) sum_k += k;
  for (long long k : kappa_prev) sum_prev += k;
  const double ratio = schur_poly(kappa, s) / schur_poly(kappa_prev, s);
  return prefactor * ratio * std::pow(t_n, static_cast<double>(sum_k - sum_prev));
}

double brownian_polymer_sup(int n, int r1, double kappa1, double kappa2, int steps,
                            RngStream& stream) {
  if (n < 1) throw ArgumentError("brownian_polymer_sup: need n >= 1");
  if (steps < n) throw ArgumentError("brownian_polymer_sup: need steps >= n");
  if (r1 < 0 || r1 > n) throw ArgumentError("brownian_polymer_sup: r1 out of range");

  const double dt = 1.0 / steps;
  const int grid = steps + 1;
  std::vector<double> b(grid), f_prev(grid), f(grid);

  for (int j = 1; j <= n; ++j) {
    const double kappa = j <= r1 ? kappa1 : kappa2;
    b[0] = 0.0;
    for (int k = 1; k < grid; ++k) b[k] = b[k - 1] + stream.gaussian(0.0, dt);
    if (j == 1) {
      // first segment starts at time 0
      for (int k = 0; k < grid; ++k) f[k] = b[k] + kappa * (k * dt);
    } else {
      double best = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < grid; ++k) {
        best = std::max(best, f_prev[k] - b[k] - kappa * (k * dt));
        f[k] = b[k] + kappa * (k * dt) + best;
      }
    }
    std::swap(f, f_prev);
  }
  return f_prev[grid - 1];
}

} // namespace minorlab
