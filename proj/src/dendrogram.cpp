#include "synchro/dendrogram.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "synchro/hawkes_formulas.hpp"
#include "synchro/quadrature.hpp"

namespace synchro {

// ---------------------------------------------------------------- counting

static long long factorial(int n) {
  long long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

long long dendrogram_count(int l) {
  if (l < 1 || l > 16) throw std::invalid_argument("dendrogram_count: 1 <= l <= 16");
  std::vector<long long> c(static_cast<std::size_t>(l) + 1, 0);
  c[1] = 1;
  for (int n = 2; n <= l; ++n) {
    long long total = 0;
    // integer partitions of n with at least two parts, descending
    std::vector<int> parts;
    std::function<void(int, int)> rec = [&](int left, int max_part) {
      if (left == 0) {
        if (parts.size() < 2) return;
        // count of set partitions with this block-size type, times the
        // number of subtrees each block can form
        long long ways = 1;
        long long trees = 1;
        int rem = n;
        for (const int size : parts) {
          long long binom = 1;
          for (int k = 1; k <= size; ++k)
            binom = binom * (rem - size + k) / k;  // exact at each step
          ways *= binom;
          rem -= size;
          trees *= c[static_cast<std::size_t>(size)];
        }
        for (std::size_t i = 0; i < parts.size();) {
          std::size_t j = i;
          while (j < parts.size() && parts[j] == parts[i]) ++j;
          ways /= factorial(static_cast<int>(j - i));  // identical sizes are unordered
          i = j;
        }
        total += ways * trees;
        return;
      }
      for (int p = std::min(left, max_part); p >= 1; --p) {
        parts.push_back(p);
        rec(left - p, p);
        parts.pop_back();
      }
    };
    rec(n, n - 1);  // max part n-1 forbids the single-block partition
    c[n] = total;
  }
  return c[static_cast<std::size_t>(l)];
}

// ------------------------------------------------------------- enumeration

namespace {

struct TreeTmp {
  int leaf = -1;
  std::vector<TreeTmp> kids;
};

// all set partitions of items into >= 2 blocks (restricted growth strings)
void set_partitions(const std::vector<int>& items,
                    const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  const std::size_t m = items.size();
  std::vector<int> assign(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int maxb) {
    if (i == m) {
      if (maxb < 1) return;  // single block: not series-reduced
      std::vector<std::vector<int>> blocks(static_cast<std::size_t>(maxb) + 1);
      for (std::size_t k = 0; k < m; ++k)
        blocks[static_cast<std::size_t>(assign[k])].push_back(items[k]);
      fn(blocks);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      assign[i] = b;
      rec(i + 1, std::max(maxb, b));
    }
  };
  assign[0] = 0;
  rec(1, 0);
}

std::vector<TreeTmp> enum_trees(const std::vector<int>& labels) {
  std::vector<TreeTmp> out;
  if (labels.size() == 1) {
    TreeTmp t;
    t.leaf = labels[0];
    out.push_back(t);
    return out;
  }
  set_partitions(labels, [&](const std::vector<std::vector<int>>& blocks) {
    // cartesian product of the subtree choices per block
    std::vector<std::vector<TreeTmp>> choices;
    choices.reserve(blocks.size());
    for (const auto& blk : blocks) choices.push_back(enum_trees(blk));
    std::vector<std::size_t> idx(blocks.size(), 0);
    for (;;) {
      TreeTmp t;
      for (std::size_t k = 0; k < blocks.size(); ++k)
        t.kids.push_back(choices[k][idx[k]]);
      out.push_back(std::move(t));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  });
  return out;
}

int flatten(const TreeTmp& t, int parent, Dendrogram& d) {
  const int id = static_cast<int>(d.nodes.size());
  d.nodes.emplace_back();
  d.nodes.back().parent = parent;
  d.nodes.back().leaf_label = t.leaf;
  for (const TreeTmp& k : t.kids) {
    const int kid = flatten(k, id, d);
    d.nodes[static_cast<std::size_t>(id)].children.push_back(kid);
  }
  return id;
}

int node_depth(const Dendrogram& d, int v) {
  int depth = 0;
  while (d.nodes[static_cast<std::size_t>(v)].parent >= 0) {
    v = d.nodes[static_cast<std::size_t>(v)].parent;
    ++depth;
  }
  return depth;
}

}  // namespace

std::vector<Dendrogram> enumerate_dendrograms(int l) {
  if (l < 2 || l > 5) throw std::invalid_argument("enumerate_dendrograms: 2 <= l <= 5");
  std::vector<int> labels(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) labels[static_cast<std::size_t>(i)] = i;
  std::vector<Dendrogram> out;
  for (const TreeTmp& t : enum_trees(labels)) {
    Dendrogram d;
    d.l = l;
    flatten(t, -1, d);
    for (int v = 0; v < static_cast<int>(d.nodes.size()); ++v)
      if (!d.nodes[static_cast<std::size_t>(v)].is_leaf())
        d.internal_deepest_first.push_back(v);
    std::stable_sort(d.internal_deepest_first.begin(),
                     d.internal_deepest_first.end(), [&](int x, int y) {
                       return node_depth(d, x) > node_depth(d, y);
                     });
    out.push_back(std::move(d));
  }
  return out;
}

static std::string signature_of(const Dendrogram& d, int v) {
  const auto& node = d.nodes[static_cast<std::size_t>(v)];
  if (node.is_leaf()) return "o";
  std::vector<std::string> kids;
  for (int c : node.children) kids.push_back(signature_of(d, c));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  s += ")";
  return s;
}

std::string Dendrogram::signature() const { return signature_of(*this, 0); }

static int min_label_of(const Dendrogram& d, int v) {
  const auto& node = d.nodes[static_cast<std::size_t>(v)];
  if (node.is_leaf()) return node.leaf_label;
  int m = std::numeric_limits<int>::max();
  for (int c : node.children) m = std::min(m, min_label_of(d, c));
  return m;
}

static std::string labels_of(const Dendrogram& d, int v) {
  const auto& node = d.nodes[static_cast<std::size_t>(v)];
  if (node.is_leaf()) return std::to_string(node.leaf_label + 1);
  std::vector<int> kids = node.children;
  std::sort(kids.begin(), kids.end(), [&](int x, int y) {
    return min_label_of(d, x) < min_label_of(d, y);
  });
  std::string s = "(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) s += ",";
    s += labels_of(d, kids[i]);
  }
  s += ")";
  return s;
}

std::string Dendrogram::label_string() const { return labels_of(*this, 0); }

std::vector<std::pair<std::string, int>> class_multiplicities(int l) {
  std::vector<std::pair<std::string, int>> out;
  for (const Dendrogram& d : enumerate_dendrograms(l)) {
    const std::string sig = d.signature();
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& p) { return p.first == sig; });
    if (it == out.end())
      out.emplace_back(sig, 1);
    else
      ++it->second;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// -------------------------------------------------------------- evaluation

namespace {

struct EvalPrep {
  std::vector<std::vector<int>> leaf_children;      // per node
  std::vector<std::vector<int>> internal_children;  // per node
  std::vector<double> min_leaf_child_time;          // +inf if none
  std::vector<int> min_leaf_child;                  // node index, -1 if none
};

EvalPrep prepare(const Dendrogram& d, const std::vector<double>& t) {
  EvalPrep p;
  const std::size_t n = d.nodes.size();
  p.leaf_children.resize(n);
  p.internal_children.resize(n);
  p.min_leaf_child_time.assign(n, std::numeric_limits<double>::infinity());
  p.min_leaf_child.assign(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    for (int c : d.nodes[v].children) {
      const auto& cn = d.nodes[static_cast<std::size_t>(c)];
      if (cn.is_leaf()) {
        p.leaf_children[v].push_back(c);
        const double tc = t[static_cast<std::size_t>(cn.leaf_label)];
        if (tc < p.min_leaf_child_time[v]) {
          p.min_leaf_child_time[v] = tc;
          p.min_leaf_child[v] = c;
        }
      } else {
        p.internal_children[v].push_back(c);
      }
    }
  }
  return p;
}

}  // namespace

double eval_cumulant_term(const Dendrogram& d, const std::vector<double>& times,
                          double mu, double a, double b, double rel_tol) {
  require_subcritical(a, b);
  if (static_cast<int>(times.size()) != d.l)
    throw std::invalid_argument("eval_cumulant_term: times size != l");
  if (mu < 0) throw std::invalid_argument("mu >= 0");
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t j = i + 1; j < times.size(); ++j)
      if (times[i] == times[j])
        throw std::invalid_argument(
            "coincident times: on a diagonal the order-l density reduces to "
            "the order-(l-1) density of the deduplicated times; evaluate that "
            "instead");

  const double r = b - a;
  const double ell = a / b;
  const EvalPrep prep = prepare(d, times);
  const auto psi_f = [a, r](double x) {
    return x > 0 ? a * std::exp(-r * x) : 0.0;
  };

  // time of each leaf node; internal positions filled per case
  std::vector<double> pos(d.nodes.size(), 0.0);
  for (std::size_t v = 0; v < d.nodes.size(); ++v)
    if (d.nodes[v].is_leaf())
      pos[v] = times[static_cast<std::size_t>(d.nodes[v].leaf_label)];

  const std::vector<int>& internal = d.internal_deepest_first;
  const int ni = static_cast<int>(internal.size());
  const double tmin = *std::min_element(times.begin(), times.end());
  const double tmax = *std::max_element(times.begin(), times.end());
  // natural magnitude of one term: the exponential envelope without constants
  const double scale =
      std::pow(a, d.l - 1) * std::exp(-r * (tmax - tmin)) + 1e-300;
  const double abs_tol = rel_tol * scale;

  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << ni); ++mask) {
    std::vector<bool> dirac(d.nodes.size(), false);
    bool feasible = true;
    for (int k = 0; k < ni && feasible; ++k) {
      if (!(mask & (1u << k))) continue;
      const int v = internal[static_cast<std::size_t>(k)];
      if (prep.min_leaf_child[static_cast<std::size_t>(v)] < 0)
        feasible = false;  // pinning needs a leaf child
      else
        dirac[static_cast<std::size_t>(v)] = true;
    }
    if (!feasible) continue;

    for (std::size_t v = 0; v < d.nodes.size(); ++v)
      if (dirac[v]) pos[v] = prep.min_leaf_child_time[v];

    // unpinned internal nodes other than the root become numeric dimensions,
    // integrated deepest first so every node sees its children's positions
    std::vector<int> numeric;
    for (int k = 0; k < ni; ++k) {
      const int v = internal[static_cast<std::size_t>(k)];
      if (!dirac[static_cast<std::size_t>(v)] && v != 0) numeric.push_back(v);
    }
    const bool root_chain = !dirac[0];

    std::function<double(std::size_t)> level = [&](std::size_t k) -> double {
      if (k == numeric.size()) {
        double prod = 1.0;
        for (int vi = 0; vi < ni; ++vi) {
          const int v = internal[static_cast<std::size_t>(vi)];
          const auto& node = d.nodes[static_cast<std::size_t>(v)];
          if (v == 0 && root_chain) {
            std::vector<double> alphas;
            alphas.reserve(node.children.size());
            for (int c : node.children) alphas.push_back(pos[static_cast<std::size_t>(c)]);
            prod *= chain_integral(std::move(alphas), a, b);
          } else {
            const int consumed =
                dirac[static_cast<std::size_t>(v)] ? prep.min_leaf_child[static_cast<std::size_t>(v)] : -1;
            for (int c : node.children) {
              if (c == consumed) continue;
              prod *= psi_f(pos[static_cast<std::size_t>(c)] - pos[static_cast<std::size_t>(v)]);
              if (prod == 0.0) return 0.0;
            }
          }
        }
        return prod;
      }
      const int v = numeric[k];
      double hi = std::numeric_limits<double>::infinity();
      for (int c : d.nodes[static_cast<std::size_t>(v)].children)
        hi = std::min(hi, pos[static_cast<std::size_t>(c)]);
      const double lo = hi - 40.0 / r;
      std::vector<double> bps;
      for (double tv : times) bps.push_back(tv);
      for (std::size_t u = 0; u < d.nodes.size(); ++u)
        if (!d.nodes[u].is_leaf() && dirac[u]) bps.push_back(pos[u]);
      for (std::size_t kk = 0; kk < k; ++kk)
        bps.push_back(pos[static_cast<std::size_t>(numeric[kk])]);
      return integrate(
          [&](double x) {
            pos[static_cast<std::size_t>(v)] = x;
            return level(k + 1);
          },
          lo, hi, abs_tol, bps);
    };

    total += level(0);
  }
  return mu / (1.0 - ell) * total;
}

double cumulant_density(int l, const std::vector<double>& times, double mu,
                        double a, double b, double rel_tol) {
  if (l < 2 || l > 4)
    throw std::invalid_argument(
        "cumulant_density: evaluation covers 2 <= l <= 4 (enumeration alone "
        "goes to 5)");
  double sum = 0.0;
  for (const Dendrogram& d : enumerate_dendrograms(l))
    sum += eval_cumulant_term(d, times, mu, a, b, rel_tol);
  return sum;
}

}  // namespace synchro
