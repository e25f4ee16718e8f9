#pragma once

#include <string>
#include <vector>

#include "cheshire/tensor_core.hpp"

namespace cheshire {

// Minimum |<f|i>|^2 for which a weak value is defined.
inline constexpr double kOverlapEpsilon = 1e-9;
inline constexpr double kNormTol = 1e-12;

enum class PostState { exchange, identity };

std::string to_string(PostState post);

// (sin a |u1 d2> + cos a |d1 u2>) (|up1 down2> - |down1 up2>)/sqrt(2)
// Any real alpha is accepted; range policy belongs to callers.
StateVector preselect(double alpha);

// (|up down> + |down up>)|u1 d2>/2 + (|up down> - |down up>)|d1 u2>/2
StateVector post_exchange();

// |up1 down2>|d1 u2>
StateVector post_identity();

StateVector post_state(PostState post);

// Pre/post-selected pair with the cached overlap <f|i>.
class Selection {
public:
    // Throws DomainError if either state is not normalized within kNormTol.
    Selection(StateVector pre, StateVector post);

    static Selection canonical_pair(double alpha, PostState post) {
        return Selection(preselect(alpha), post_state(post));
    }

    const StateVector& pre() const { return pre_; }
    const StateVector& post() const { return post_; }
    Complex overlap() const { return overlap_; }
    // Unperturbed post-selection probability |<f|i>|^2.
    double n0() const { return n0_; }
    bool admits_weak_values() const { return n0_ >= kOverlapEpsilon; }

    // Throws OrthogonalSelection when n0 < kOverlapEpsilon.
    void require_weak_values() const;

private:
    StateVector pre_;
    StateVector post_;
    Complex overlap_;
    double n0_;
};

struct WeakValue {
    Complex value;
    std::string observable_label;
};

// <f|O|i> / <f|i>
WeakValue weak_value(const Operator& op, const Selection& sel);

// canonical_observables() evaluated in order.
std::vector<WeakValue> weak_value_table(const Selection& sel);

}  // namespace cheshire
