#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace wbl {

// Exact checks on small graphs given by local vertex indices 0..m-1.

// Backtracking Hamiltonian cycle test; intended for m <= 60.
bool is_hamiltonian(int m, const std::vector<std::pair<int, int>>& edges);

// Exact C_k detection (simple cycle on exactly k vertices), any m.
bool contains_cycle_k(int m, const std::vector<std::pair<int, int>>& edges,
                      int k);

} // namespace wbl
