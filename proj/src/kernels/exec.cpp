#include "braidkit/kernels/exec.hpp"

#include <exception>

#include <omp.h>

namespace braidkit::kernels {

namespace {

template <class F>
void parallel_for(std::size_t n, F&& body) {
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n); ++j) {
    try {
      body(static_cast<std::size_t>(j));
    } catch (...) {
#pragma omp critical(braidkit_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace

int thread_count() { return omp_get_max_threads(); }

std::vector<exact::SparseVec> build_columns(std::size_t n, const std::function<exact::SparseVec(std::size_t)>& f,
                                            Exec exec) {
  std::vector<exact::SparseVec> out(n);
  if (exec == Exec::serial) {
    for (std::size_t j = 0; j < n; ++j) out[j] = f(j);
  } else {
    parallel_for(n, [&](std::size_t j) { out[j] = f(j); });
  }
  return out;
}

std::vector<exact::SparseVec> reduce_batch(const exact::EchelonBuilder& b, const std::vector<exact::SparseVec>& vs,
                                           Exec exec) {
  std::vector<exact::SparseVec> out(vs.size());
  if (exec == Exec::serial) {
    exact::Accumulator acc(b.field(), b.ambient());
    for (std::size_t j = 0; j < vs.size(); ++j) out[j] = b.reduce(vs[j], acc);
    return out;
  }
  std::exception_ptr err;
#pragma omp parallel
  {
    exact::Accumulator acc(b.field(), b.ambient());
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(vs.size()); ++j) {
      try {
        out[static_cast<std::size_t>(j)] = b.reduce(vs[static_cast<std::size_t>(j)], acc);
      } catch (...) {
#pragma omp critical(braidkit_err)
        if (!err) err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

void insert_batch(exact::EchelonBuilder& b, const std::vector<exact::SparseVec>& vs, Exec exec) {
  if (vs.empty()) return;
  // Pre-reduction against the rows present before the batch, then sequential insertion.
  auto reduced = reduce_batch(b, vs, exec);
  std::size_t before = b.rank();
  for (auto& v : reduced) {
    if (v.empty()) continue;
    if (b.rank() == before)
      b.insert_reduced(std::move(v));
    else
      b.insert(v);
  }
}

}  // namespace braidkit::kernels
