#include "qfock/fock.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

namespace qfock {

void FockParams::validate() const {
    if (n < 0 || m < 0 || p < 0)
        throw Error(ErrorCode::Domain, "n, m, p must be nonnegative");
    if (n + m < 1) throw Error(ErrorCode::Domain, "n + m must be at least 1");
}

int theta(int i, const FockParams& params) {
    if (i < 0 || i > params.generator_count())
        throw Error(ErrorCode::IndexRange, "theta index " + std::to_string(i));
    return i <= params.n ? 0 : 1;
}

bool is_valid_occupation(const OccupationVector& r, const FockParams& params) {
    if (static_cast<int>(r.size()) != params.generator_count()) return false;
    long long total = 0;
    for (int i = 1; i <= params.generator_count(); ++i) {
        const int v = r[i - 1];
        if (v < 0) return false;
        if (i > params.n && v > 1) return false;
        total += v;
    }
    return total <= params.p;
}

std::int64_t dim_formula(const FockParams& params) {
    params.validate();
    auto binom = [](int a, int b) -> std::int64_t {
        if (b < 0 || b > a) return 0;
        std::int64_t r = 1;
        for (int k = 1; k <= b; ++k) r = r * (a - b + k) / k;
        return r;
    };
    std::int64_t total = 0;
    for (int f = 0; f <= std::min(params.m, params.p); ++f)
        total += binom(params.m, f) * binom(params.n + params.p - f, params.n);
    return total;
}

int h_eigenvalue(int i, const OccupationVector& r, const FockParams& params) {
    if (i < 1 || i > params.generator_count())
        throw Error(ErrorCode::IndexRange, "generator index " + std::to_string(i));
    const int sign = theta(i, params) == 0 ? 1 : -1;
    const int total = std::accumulate(r.begin(), r.end(), 0);
    return params.p - sign * r[i - 1] - total;
}

FockBasis::FockBasis(FockParams params) : params_(params) {
    params_.validate();
    const int count = params_.generator_count();
    OccupationVector current(count, 0);
    // depth-first in lexicographic order, so no sort is needed
    auto rec = [&](auto&& self, int pos, int used) -> void {
        if (pos > count) {
            states_.push_back(current);
            return;
        }
        const int cap = pos > params_.n ? 1 : params_.p;
        for (int v = 0; v <= std::min(cap, params_.p - used); ++v) {
            current[pos - 1] = v;
            self(self, pos + 1, used + v);
        }
        current[pos - 1] = 0;
    };
    rec(rec, 1, 0);
    for (int k = 0; k < static_cast<int>(states_.size()); ++k) lookup_.emplace(states_[k], k);
    vacuum_ = index_of(OccupationVector(count, 0));
}

const OccupationVector& FockBasis::state(int index) const {
    if (index < 0 || index >= dim())
        throw Error(ErrorCode::IndexRange, "state index " + std::to_string(index));
    return states_[index];
}

int FockBasis::index_of(const OccupationVector& r) const {
    auto it = lookup_.find(r);
    if (it == lookup_.end()) throw Error(ErrorCode::IndexRange, "occupation vector not in basis");
    return it->second;
}

int FockBasis::state_parity(int index) const {
    const OccupationVector& r = state(index);
    int parity = 0;
    for (int i = params_.n + 1; i <= params_.generator_count(); ++i) parity ^= r[i - 1] & 1;
    return parity;
}

int FockBasis::h_eigenvalue(int i, int state_index) const {
    return qfock::h_eigenvalue(i, state(state_index), params_);
}

std::shared_ptr<const FockBasis> make_basis(const FockParams& params) {
    return std::make_shared<const FockBasis>(params);
}

std::string basis_to_json(const FockBasis& basis) {
    nlohmann::ordered_json j;
    j["params"] = {{"n", basis.params().n}, {"m", basis.params().m}, {"p", basis.params().p}};
    j["states"] = basis.states();
    return j.dump();
}

} // namespace qfock
