#pragma once

#include "chidef/star_operation.hpp"

#include <optional>
#include <string>

namespace chidef {

// Bookkeeping for the shifted operad O'(n) = O(n) (x) eps_n [1-n]: an
// O'-algebra structure on V is an O-algebra structure on V[1].
struct ShiftedOperadMarker {
    std::string underlying_operad;
    bool epsilon_twist = true;
    int degree_shift(std::size_t arity) const { return 1 - int(arity); }
};

// A *-Lie algebra presented by its binary bracket on a free module.
struct StarLieDatum {
    ModulePtr module;
    StarOperation bracket; // arity 2, sources and target equal to module

    // skew-symmetry defect: bracket + swap(bracket)
    StarOperation skew_defect() const {
        Permutation swap{{1, 0}};
        return bracket + bracket.permute(swap, false);
    }

    // operadic Jacobi defect: sum over cyclic rotations of o_1(bracket, bracket)
    StarOperation jacobi_defect() const {
        StarOperation c = compose_i(bracket, bracket, 1);
        Permutation rot{{1, 2, 0}}; // cyclic rotation of the three slots
        StarOperation acc = c;
        StarOperation c1 = c.permute(rot, false);
        acc += c1;
        acc += c1.permute(rot, false);
        return acc;
    }

    bool is_lie() const { return skew_defect().is_zero() && jacobi_defect().is_zero(); }
};

// Result of interpreting a degree-1 Maurer-Cartan element of g_{O'} as a map
// of operads Lie -> O, with the axioms re-certified on the binary datum.
struct McOperadReport {
    bool mc_holds = false;
    StarOperation mc_residual;   // [x,x]/2, arity-3 component
    bool skew_ok = false;
    bool jacobi_ok = false;
    StarOperation jacobi_residual;
    std::optional<StarLieDatum> lie_datum; // present iff everything holds
};

inline McOperadReport mc_operad_correspondence(const StarOperation& mc,
                                               const BraceConvention& conv = {}) {
    if (mc.arity() != 2) throw std::invalid_argument("mc_operad_correspondence: expected arity 2");
    if (g_degree(mc) != 1)
        throw std::invalid_argument("mc_operad_correspondence: expected g-degree 1");
    McOperadReport rep{false,
                       bracket(mc, mc, conv) * Rational(1, 2),
                       false,
                       false,
                       StarLieDatum{mc.sources()[0], mc}.jacobi_defect(),
                       std::nullopt};
    rep.mc_holds = rep.mc_residual.is_zero();
    StarLieDatum datum{mc.sources()[0], mc};
    rep.skew_ok = datum.skew_defect().is_zero();
    rep.jacobi_ok = rep.jacobi_residual.is_zero();
    if (rep.mc_holds && rep.skew_ok && rep.jacobi_ok) rep.lie_datum = datum;
    return rep;
}

// inverse direction: a Lie* datum packaged as a Maurer-Cartan element of g_{O'}
inline StarOperation lie_datum_as_mc(const StarLieDatum& datum) {
    if (!datum.is_lie())
        throw std::invalid_argument("lie_datum_as_mc: datum fails the Lie axioms");
    return datum.bracket;
}

} // namespace chidef
