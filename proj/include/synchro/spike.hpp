#pragma once

#include <algorithm>
#include <vector>

namespace synchro {

// event times of one neuron on an observation window, sorted nondecreasing;
// duplicates are legal (each counts separately)
using Train = std::vector<double>;

// one trial: simultaneously recorded pair
struct TrialPair {
  Train x1, x2;
};

// n i.i.d. trials
using Sample = std::vector<TrialPair>;

inline bool is_sorted_train(const Train& t) {
  return std::is_sorted(t.begin(), t.end());
}

inline Train merge_sorted(const Train& a, const Train& b) {
  Train out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace synchro
