#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "braidkit/envelope/poly.hpp"
#include "braidkit/tower/tower.hpp"

namespace braidkit::envelope {

using braided::BraidedSpace;
using braided::FilteredIndex;
using exact::Subspace;

class HeadroomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Which subspace generates the standard filtration.
enum class Generators { degree_one, primitives };

// U = T(V)/J truncated at filtration degree N. F ⊆ T_(N) is J ∩ T_(N) in FilteredIndex(d, N)
// coordinates; F_n consists of the rows whose pivot has degree <= n.
struct FilteredPresentation {
  std::shared_ptr<const BraidedSpace> space;
  std::size_t truncation = 0;
  std::size_t headroom = 0;       // requested
  std::size_t headroom_used = 0;  // certified by comparison with headroom_used + 1
  bool homogeneous = false;
  std::vector<Poly> relations;
  Subspace ideal{exact::Field::rationals(), 0};
  Generators generators = Generators::degree_one;

  FilteredIndex index() const { return FilteredIndex(space->dim(), truncation); }
  // dim F_n for n = 0..N
  std::vector<std::size_t> ideal_dims() const;
  // dim U_(n) = dim T_(n) - dim F_n
  std::vector<std::size_t> filtration_dims() const;
  bool same_ideal(const FilteredPresentation& o) const { return truncation == o.truncation && ideal == o.ideal; }
};

struct FilteredOptions {
  std::size_t headroom = 2;
  std::size_t max_headroom = 4;
  kernels::Exec exec = kernels::Exec::parallel;
};

// Closure of {w1 r w2} within top degree N+h, accepted once it agrees with the closure at N+h+1.
FilteredPresentation filtered_ideal(std::shared_ptr<const BraidedSpace> s, const std::vector<Poly>& relations,
                                    std::size_t N, const FilteredOptions& opt = {});
// The same, with the closure taken at a single fixed headroom (no stability check).
Subspace filtered_ideal_at(const BraidedSpace& s, const std::vector<Poly>& relations, std::size_t N, std::size_t h,
                           kernels::Exec exec = kernels::Exec::parallel);
// Homogeneous ideal of a graded presentation viewed as a filtered one.
FilteredPresentation from_graded(const tower::GradedPresentation& g);

}  // namespace braidkit::envelope
