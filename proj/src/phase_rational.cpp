#include "qcat/phase_rational.hpp"

#include <stdexcept>

namespace qcat {

using cohomology::CircleValue;

PhaseRational::PhaseRational(Rational coeff, CircleValue phase) : coeff_(std::move(coeff)), phase_(phase) {
    if (coeff_ == 0) throw std::domain_error("PhaseRational: zero is not a unit");
    if (2 * phase_.num() >= phase_.den()) {
        phase_ = phase_ - CircleValue(1, 2);
        coeff_ = -coeff_;
    }
}

PhaseRational PhaseRational::parse(const std::string& text) {
    auto at = text.find('@');
    if (at == std::string::npos) return PhaseRational(parse_rational(text));
    return PhaseRational(parse_rational(text.substr(0, at)), CircleValue::parse(text.substr(at + 1)));
}

const Rational& PhaseRational::rational() const {
    if (!is_rational()) throw std::domain_error("PhaseRational: value " + str() + " is not rational");
    return coeff_;
}

CircleValue PhaseRational::angle() const {
    if (!is_root_of_unity()) throw std::domain_error("PhaseRational: value " + str() + " is not a root of unity");
    return coeff_ < 0 ? phase_ + CircleValue(1, 2) : phase_;
}

PhaseRational PhaseRational::operator*(const PhaseRational& o) const {
    return PhaseRational(coeff_ * o.coeff_, phase_ + o.phase_);
}

PhaseRational PhaseRational::inverse() const { return PhaseRational(Rational(1) / coeff_, -phase_); }

PhaseRational PhaseRational::pow(std::int64_t k) const {
    return PhaseRational(qcat::pow(coeff_, k), k * phase_);
}

std::string PhaseRational::str() const {
    if (phase_.is_zero()) return to_string(coeff_);
    return to_string(coeff_) + "@" + phase_.str();
}

}  // namespace qcat
