#pragma once

// Independent brute-force reference computations. Nothing here calls into the
// library, so agreement with it is meaningful.

#include <array>
#include <cstdint>
#include <vector>

namespace oracle {

using Triple = std::array<int, 3>;

std::vector<Triple> fano_blocks();

// Partitions of the edges of K_n into triangles (as unordered sets of triangles).
std::uint64_t count_triangle_decompositions(int n);

// Latin squares of order n.
std::uint64_t count_latin_squares(int n);

// 4x4 Sudoku squares (2x2 boxes).
std::uint64_t count_sudoku4();

// Resolvability check for a triple system on [n]: classes are partitions of [n]
// into triples and every pair is covered exactly once overall.
bool is_kirkman(const std::vector<std::vector<Triple>>& classes, int n);

std::uint64_t binom(int n, int k);

// Rank over Q by fraction-free elimination in 128-bit integers (small matrices only).
int rank_small(std::vector<std::vector<long long>> m);

} // namespace oracle
