#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "erw/errors.hpp"

namespace erw {

// Model parameters: dimension d >= 1 and excitement beta in [0,1].
struct ModelParams {
    int d;
    double beta;

    ModelParams(int d_, double beta_) : d(d_), beta(beta_) {
        if (d < 1) throw std::domain_error("ModelParams: d must be >= 1");
        if (beta < 0.0 || beta > 1.0) throw std::domain_error("ModelParams: beta must be in [0,1]");
    }
};

// A point of Z^d.
struct LatticeVector {
    std::vector<int32_t> c;

    LatticeVector() = default;
    explicit LatticeVector(int d) : c(d, 0) {}
    LatticeVector(std::initializer_list<int32_t> init) : c(init) {}

    int dim() const { return static_cast<int>(c.size()); }

    bool operator==(const LatticeVector& o) const { return c == o.c; }

    LatticeVector operator+(const LatticeVector& o) const {
        LatticeVector r(*this);
        for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }
    LatticeVector operator-(const LatticeVector& o) const {
        LatticeVector r(*this);
        for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
        return r;
    }

    // L1 norm; unit steps have l1() == 1.
    int64_t l1() const {
        int64_t s = 0;
        for (int32_t v : c) s += std::abs(static_cast<int64_t>(v));
        return s;
    }

    static LatticeVector unit(int d, int axis, int sign) {
        LatticeVector e(d);
        e.c[axis] = sign;
        return e;
    }
};

struct LatticeVectorHash {
    size_t operator()(const LatticeVector& v) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (int32_t x : v.c) {
            h ^= static_cast<uint64_t>(static_cast<uint32_t>(x));
            h *= 0x100000001b3ull;
        }
        return static_cast<size_t>(h);
    }
};

// Excited-walk transition kernel, generic over the scalar so the expansion
// module can run it with exact rationals.  `step` is to - from, |step| = 1.
// Excited: (1 + beta * e1.step) / (2d); otherwise 1 / (2d).
template <typename Scalar>
Scalar kernel_value(int d, const Scalar& beta, int e1_step, bool excited) {
    Scalar num = excited ? Scalar(1) + beta * Scalar(e1_step) : Scalar(1);
    return num / Scalar(2 * d);
}

// Transition probability of a single step.  Throws on a non-neighbour pair.
double transition_probability(const ModelParams& params, const LatticeVector& from,
                              const LatticeVector& to, bool excited);

// A nearest-neighbour path with a value-keyed visited index.  Immutable from
// the outside; extend() returns a new path.
class WalkPath {
public:
    explicit WalkPath(const LatticeVector& start) { push(start); }

    int length() const { return static_cast<int>(sites_.size()) - 1; }
    const std::vector<LatticeVector>& sites() const { return sites_; }
    const LatticeVector& endpoint() const { return sites_.back(); }

    // True iff `pos` does not occur strictly before the final index.
    bool is_fresh_at_end() const;

    // True iff `pos` occurs anywhere in the path.
    bool visited(const LatticeVector& pos) const { return counts_.count(pos) > 0; }

    size_t visited_count() const { return counts_.size(); }

    WalkPath extend(const LatticeVector& step) const;

    // Mutable growth, for enumeration loops that backtrack.  push_step checks
    // the unit-step invariant; pop undoes the last push.
    void push_step(const LatticeVector& step);
    void pop();

private:
    void push(const LatticeVector& site) {
        sites_.push_back(site);
        ++counts_[site];
    }

    std::vector<LatticeVector> sites_;
    std::unordered_map<LatticeVector, int, LatticeVectorHash> counts_;
};

// Freshness of the path endpoint, per the spec of the excited kernel: the
// walker is excited iff its current site was never visited before.
inline bool is_fresh(const WalkPath& path) { return path.is_fresh_at_end(); }

}  // namespace erw
