#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qfock/error.hpp"

namespace qfock {

/// Shape of one Fock family: n even generator pairs, m odd pairs,
/// order of the statistics p (the cap on the total occupation).
struct FockParams {
    int n = 0;
    int m = 0;
    int p = 0;

    int generator_count() const { return n + m; }
    void validate() const;

    friend bool operator==(const FockParams&, const FockParams&) = default;
};

/// Occupation numbers (r_1, ..., r_{n+m}); entries past position n are 0/1.
using OccupationVector = std::vector<int>;

/// Z_2 grading of generator index i: 0 for i <= n, 1 for i > n.
/// Valid for 0 <= i <= n+m (index 0 belongs to the root lattice bookkeeping).
int theta(int i, const FockParams& params);

/// Whether r satisfies the occupation constraints for params.
bool is_valid_occupation(const OccupationVector& r, const FockParams& params);

/// Closed form for the number of admissible occupation vectors:
/// sum over the fermionic count f of C(m,f) * C(n+p-f, n).
std::int64_t dim_formula(const FockParams& params);

/// Diagonal eigenvalue of H_i on the basis vector labelled r:
/// p - (-1)^theta_i * r_i - sum_j r_j.
int h_eigenvalue(int i, const OccupationVector& r, const FockParams& params);

/**
 * The ordered basis of the order-p Fock space: all admissible occupation
 * vectors in ascending lexicographic order, with exact inverse lookup.
 * Immutable after construction.
 */
class FockBasis {
public:
    explicit FockBasis(FockParams params);

    const FockParams& params() const { return params_; }
    int dim() const { return static_cast<int>(states_.size()); }
    const std::vector<OccupationVector>& states() const { return states_; }
    const OccupationVector& state(int index) const;

    /// Position of r in the lexicographic order; INDEX_RANGE if absent.
    int index_of(const OccupationVector& r) const;
    bool contains(const OccupationVector& r) const { return lookup_.count(r) != 0; }

    /// Index of the vacuum (the all-zero vector).
    int vacuum_index() const { return vacuum_; }

    /// Parity of a basis vector: number of occupied odd slots mod 2.
    int state_parity(int index) const;

    int h_eigenvalue(int i, int state_index) const;

private:
    FockParams params_;
    std::vector<OccupationVector> states_;
    std::map<OccupationVector, int> lookup_;
    int vacuum_ = 0;
};

std::shared_ptr<const FockBasis> make_basis(const FockParams& params);

/// {"params":{"n":..,"m":..,"p":..},"states":[[..],..]}
std::string basis_to_json(const FockBasis& basis);

} // namespace qfock
