#pragma once

#include <stdexcept>
#include <string>

namespace abeloid {

/**
 * Error taxonomy shared by every module.
 *
 * All preconditions are enforced eagerly and failures carry a stable
 * machine-readable code alongside the human-readable message, so the CLI
 * can map exceptions onto exit codes and JSON error objects.
 */
enum class errc {
    even_prime,            // p = 2 (or composite / < 3) rejected everywhere
    bad_precision,         // precision must be >= 1
    div_by_zero,
    precision_exhausted,   // an operation would leave no significant digits
    not_a_unit,            // operand must be a p-adic unit (valuation 0)
    non_residue,           // no square root exists mod p
    height_too_large,      // rational reconstruction bound violates 2H^2 < p^N
    parse_error,
    illegal_exponent,      // exponent form not permitted on this base
    fractional_torsion,    // rational power would need a fractional root of unity
    padic_exponent_on_nonunit,
    generator_mismatch,    // operands built over different generator manifests
    singular_ord,          // ord(Q) not invertible: not a period matrix
    singular_phi,          // Frobenius matrix not invertible
    bad_period,            // multiplicative period must have positive valuation
    gamma_rational,        // gamma reconstructs as rational: example degenerates
    not_unimodular,
    dimension_mismatch,
    shape_mismatch,
    prime_constraint,      // scenario-specific congruence condition on p fails
    same_prime,            // l = p where l != p is required
    insufficient_facts,    // no path can certify a rational dimension
    not_isotropic,
    degenerate_pairing,
    undecided,             // equality question not settled at this precision
    bad_input,
    internal,
};

inline const char *errc_name(errc c) {
    switch (c) {
    case errc::even_prime: return "EVEN_PRIME";
    case errc::bad_precision: return "BAD_PRECISION";
    case errc::div_by_zero: return "DIV_BY_ZERO";
    case errc::precision_exhausted: return "PRECISION_EXHAUSTED";
    case errc::not_a_unit: return "NOT_A_UNIT";
    case errc::non_residue: return "NON_RESIDUE";
    case errc::height_too_large: return "HEIGHT_TOO_LARGE";
    case errc::parse_error: return "PARSE_ERROR";
    case errc::illegal_exponent: return "ILLEGAL_EXPONENT";
    case errc::fractional_torsion: return "FRACTIONAL_TORSION";
    case errc::padic_exponent_on_nonunit: return "PADIC_EXPONENT_ON_NONUNIT";
    case errc::generator_mismatch: return "GENERATOR_MISMATCH";
    case errc::singular_ord: return "SINGULAR_ORD";
    case errc::singular_phi: return "SINGULAR_PHI";
    case errc::bad_period: return "BAD_PERIOD";
    case errc::gamma_rational: return "GAMMA_RATIONAL";
    case errc::not_unimodular: return "NOT_UNIMODULAR";
    case errc::dimension_mismatch: return "DIMENSION_MISMATCH";
    case errc::shape_mismatch: return "SHAPE_MISMATCH";
    case errc::prime_constraint: return "PRIME_CONSTRAINT";
    case errc::same_prime: return "SAME_PRIME";
    case errc::insufficient_facts: return "INSUFFICIENT_FACTS";
    case errc::not_isotropic: return "NOT_ISOTROPIC";
    case errc::degenerate_pairing: return "DEGENERATE_A_PAIRING";
    case errc::undecided: return "UNDECIDED";
    case errc::bad_input: return "BAD_INPUT";
    case errc::internal: return "INTERNAL";
    }
    return "UNKNOWN";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string &what) {
    throw error(code, what);
}

} // namespace abeloid
