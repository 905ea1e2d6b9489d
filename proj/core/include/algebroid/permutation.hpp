#pragma once

#include <span>
#include <vector>

namespace algebroid {

// perm[i] = j means sheet i is carried to sheet j.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
// Apply `first`, then `second`.
Permutation compose(const Permutation& first, const Permutation& second);
Permutation inverse(const Permutation& p);
bool is_identity(const Permutation& p);
bool is_permutation(const Permutation& p);

// Cycles in canonical form: each starts at its smallest element, ordered
// by that element. Fixed points appear as 1-cycles.
std::vector<std::vector<int>> cycles(const Permutation& p);
// Cycle lengths, descending; always sums to p.size().
std::vector<int> cycle_type(const Permutation& p);

// Whether the group generated by `gens` acts transitively on {0..n-1}.
bool generates_transitive(std::span<const Permutation> gens, int n);

}  // namespace algebroid
