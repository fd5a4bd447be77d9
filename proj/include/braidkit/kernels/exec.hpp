#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "braidkit/exact/subspace.hpp"

namespace braidkit::kernels {

// Serial variants are the reference; parallel ones use OpenMP and must agree exactly.
enum class Exec { serial, parallel };

// out[j] = f(j) for j < n.
std::vector<exact::SparseVec> build_columns(std::size_t n, const std::function<exact::SparseVec(std::size_t)>& f,
                                            Exec exec);

// Reduces every vector against the (fixed) rows of b.
std::vector<exact::SparseVec> reduce_batch(const exact::EchelonBuilder& b, const std::vector<exact::SparseVec>& vs,
                                           Exec exec);

// Inserts vectors in order; the span and canonical rows do not depend on exec.
void insert_batch(exact::EchelonBuilder& b, const std::vector<exact::SparseVec>& vs, Exec exec);

int thread_count();

}  // namespace braidkit::kernels
