#ifndef PENDNET_POTENTIAL_HPP
#define PENDNET_POTENTIAL_HPP

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pendnet {

/// Even polynomial interaction G(x,y) = sum c_lm x^{2l} y^{2m}, stored as a
/// finite coefficient table. Only even powers are representable by
/// construction. Derivatives are exact (term-wise power rule).
class InteractionPotential {
  public:
    struct Term {
        int l;
        int m;
        double c;
    };

    InteractionPotential() = default;
    explicit InteractionPotential(std::vector<Term> terms) : terms_(std::move(terms)) {
        for (const auto& t : terms_)
            if (t.l < 0 || t.m < 0)
                throw std::invalid_argument("InteractionPotential: negative exponent index");
    }

    /// Partial derivative of order (dx, dy) at (x, y).
    double eval(double x, double y, int dx = 0, int dy = 0) const {
        double sum = 0.0;
        for (const auto& t : terms_) {
            int px = 2 * t.l, py = 2 * t.m;
            if (px < dx || py < dy) continue;
            double factor = t.c;
            for (int k = 0; k < dx; ++k) factor *= px - k;
            for (int k = 0; k < dy; ++k) factor *= py - k;
            sum += factor * std::pow(x, px - dx) * std::pow(y, py - dy);
        }
        return sum;
    }

    double coefficient(int l, int m) const {
        double c = 0.0;
        for (const auto& t : terms_)
            if (t.l == l && t.m == m) c += t.c;
        return c;
    }

    const std::vector<Term>& terms() const { return terms_; }

    /// Minimum of G over a 201x201 sample grid on [-2pi, 2pi]^2. The
    /// bounded-motion certificate needs G >= 0, which is only sample-checked
    /// here; a negative minimum voids the certificate but the dynamics stay
    /// defined.
    double min_on_sample_grid() const {
        constexpr int kPoints = 201;
        const double lo = -2.0 * M_PI, hi = 2.0 * M_PI;
        double m = eval(lo, lo);
        for (int i = 0; i < kPoints; ++i)
            for (int j = 0; j < kPoints; ++j) {
                double x = lo + (hi - lo) * i / (kPoints - 1);
                double y = lo + (hi - lo) * j / (kPoints - 1);
                m = std::min(m, eval(x, y));
            }
        return m;
    }

    bool nonnegative_sampled() const { return min_on_sample_grid() >= -1e-12; }

    /// G(x,y) = 1/4 - x^2 + x^4.
    static InteractionPotential double_well() {
        return InteractionPotential({{0, 0, 0.25}, {1, 0, -1.0}, {2, 0, 1.0}});
    }

    /// G(x,y) = x^2 / 2.
    static InteractionPotential harmonic() {
        return InteractionPotential({{1, 0, 0.5}});
    }

    /// One `l m c_lm` triple per line; '#' comments and blanks skipped.
    static InteractionPotential parse(std::istream& in) {
        std::vector<Term> terms;
        std::string line;
        while (std::getline(in, line)) {
            auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos || line[pos] == '#') continue;
            std::istringstream ls(line);
            Term t;
            if (!(ls >> t.l >> t.m >> t.c))
                throw std::invalid_argument("potential file: bad line: " + line);
            terms.push_back(t);
        }
        return InteractionPotential(std::move(terms));
    }

    /// Named potential (`double-well`, `harmonic`) or path to a coefficient file.
    static InteractionPotential named_or_file(const std::string& spec) {
        if (spec == "double-well") return double_well();
        if (spec == "harmonic") return harmonic();
        std::ifstream file(spec);
        if (!file) throw std::invalid_argument("potential spec: cannot open '" + spec + "'");
        return parse(file);
    }

  private:
    std::vector<Term> terms_;
};

}  // namespace pendnet

#endif
