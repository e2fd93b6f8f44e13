#pragma once

// Cluster coalescence trees and the cumulant densities they encode.
//
// A dendrogram here is a series-reduced rooted tree (every internal node has
// at least two children) whose leaves carry the labels 1..l of the cumulant's
// time arguments. The order-l cumulant density of the stationary Hawkes
// process is a sum over all such trees; each tree contributes an integral
// over the positions of its internal nodes, where an internal node at
// position v ties its children u_1..u_k together with the factor
//     prod_i Psi(u_i - v) dv
//   + 1{the smallest child is a leaf} [position pinned at that leaf,
//                                      the pinned leaf's factor dropped]
// and the node above the root (the cluster ancestor) integrates out to the
// flat factor mu / (1 - ell).
//
// Evaluation works case by case over the pinned/integrated choice at every
// internal node: the root's integral is a product of exponentials and is done
// in closed form (chain_integral); any other unpinned node becomes one
// dimension of adaptive quadrature. With l <= 4 that is at most two nested
// numeric integrals. l = 5 trees can be enumerated but not evaluated.

#include <string>
#include <utility>
#include <vector>

namespace synchro {

struct Dendrogram {
  struct Node {
    int parent = -1;
    std::vector<int> children;
    int leaf_label = -1;  // 0-based label; -1 for internal nodes
    bool is_leaf() const { return leaf_label >= 0; }
  };
  int l = 0;
  std::vector<Node> nodes;  // nodes[0] is the root
  std::vector<int> internal_deepest_first;

  std::string signature() const;     // canonical unlabeled shape
  std::string label_string() const;  // labeled rendering, e.g. ((1,2),3)
};

// number of dendrograms on l labeled leaves (1, 1, 4, 26, 236, ... from l=1)
long long dendrogram_count(int l);

// all dendrograms, duplicate-free; 2 <= l <= 5
std::vector<Dendrogram> enumerate_dendrograms(int l);

// shape signature -> number of labeled trees with that shape, sorted by signature
std::vector<std::pair<std::string, int>> class_multiplicities(int l);

// one tree's contribution to the order-l cumulant density at the given times
// (distinct, any order); rel_tol steers the numeric layers
double eval_cumulant_term(const Dendrogram& d, const std::vector<double>& times,
                          double mu, double a, double b, double rel_tol = 1e-8);

// full density: sum over all dendrograms; l <= 4
double cumulant_density(int l, const std::vector<double>& times, double mu,
                        double a, double b, double rel_tol = 1e-8);

}  // namespace synchro
