#pragma once

#include <vector>

#include "pop/entropy.hpp"
#include "pop/flow.hpp"
#include "pop/poset.hpp"

namespace pop {

// Everything the preprocessing pipeline computed on the way from a poset to
// its weak order extension.
struct GreedyExtension {
  IntervalOrder interval;
  WeakOrder weak;
  std::vector<int> sigma;  // position i holds the original index of layer i
  AntichainDecomposition first_dec;
  StabPoint point;
  Potential potential;
  AntichainDecomposition second_dec;
};

// Intervals (below, above) from a potential; the result extends p and stays
// feasible for the entropy program, so its entropy is at most the point's.
IntervalOrder interval_order_from_potential(const Poset& p, const Potential& y);

// Permutation ordering antichains of an interval order so that strictly
// related elements land in strictly increasing positions. Sorts by smallest
// right endpoint, ties by smallest left endpoint; throws std::logic_error if
// the result fails validation.
std::vector<int> sort_antichains(const IntervalOrder& io, const AntichainDecomposition& dec);

// Full pipeline: greedy decomposition, greedy point, potential, interval
// order, second greedy decomposition, ordered layers.
GreedyExtension greedy_weak_extension(const Poset& p);

}  // namespace pop
