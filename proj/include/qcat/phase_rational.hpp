#pragma once

#include "qcat/cohomology.hpp"
#include "qcat/rational.hpp"

#include <string>

namespace qcat {

/// Nonzero number r * exp(2 pi i t) with r rational and t rational. Closed under
/// products and inverses, which is all the block and monoid tables need; it
/// holds every nonzero rational and every root of unity.
/// Normal form keeps t in [0, 1/2) by absorbing -1 into r.
class PhaseRational {
public:
    PhaseRational() : coeff_(1) {}
    PhaseRational(Rational coeff) : PhaseRational(std::move(coeff), cohomology::CircleValue()) {}  // NOLINT
    PhaseRational(Rational coeff, cohomology::CircleValue phase);
    static PhaseRational root_of_unity(const cohomology::CircleValue& phase) { return PhaseRational(1, phase); }
    /// Parses "p/q" or "p/q@a/b" (the latter meaning p/q * exp(2 pi i a/b)).
    static PhaseRational parse(const std::string& text);

    const Rational& coeff() const { return coeff_; }
    const cohomology::CircleValue& phase() const { return phase_; }

    bool is_one() const { return phase_.is_zero() && coeff_ == 1; }
    bool is_rational() const { return phase_.is_zero(); }
    bool is_root_of_unity() const { return abs(coeff_) == 1; }
    /// Throws std::domain_error unless rational.
    const Rational& rational() const;
    /// Additive angle of a root of unity; throws std::domain_error otherwise.
    cohomology::CircleValue angle() const;

    PhaseRational operator*(const PhaseRational& o) const;
    PhaseRational operator/(const PhaseRational& o) const { return *this * o.inverse(); }
    PhaseRational& operator*=(const PhaseRational& o) { return *this = *this * o; }
    PhaseRational inverse() const;
    PhaseRational pow(std::int64_t k) const;

    bool operator==(const PhaseRational& o) const { return coeff_ == o.coeff_ && phase_ == o.phase_; }
    bool operator!=(const PhaseRational& o) const { return !(*this == o); }

    std::string str() const;

private:
    Rational coeff_;
    cohomology::CircleValue phase_;
};

}  // namespace qcat
