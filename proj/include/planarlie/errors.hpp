#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace planarlie {

// Base class for all planarlie errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A substitution or pushforward left the exponential-polynomial ring.
struct RingEscape : Error {
    explicit RingEscape(const std::string& what) : Error(what) {}
};

// An operation required a field of the form xi(x,y)*Dx + eta(y)*Dy.
struct NotTriangular : Error {
    explicit NotTriangular(const std::string& what) : Error(what) {}
};

// make_span received only zero fields.
struct EmptySpan : Error {
    explicit EmptySpan(const std::string& what) : Error(what) {}
};

// Bracket of basis elements i, j escapes the span; witness is the
// offending field rendered as text.
struct NotClosed : Error {
    NotClosed(std::size_t i, std::size_t j, std::string witness)
        : Error("span is not closed under the bracket: [e" + std::to_string(i + 1) +
                ", e" + std::to_string(j + 1) + "] = " + witness + " escapes the span"),
          i(i), j(j), witness(std::move(witness)) {}
    std::size_t i, j;
    std::string witness;
};

// ad_X does not preserve the target span.
struct NotInvariant : Error {
    NotInvariant(std::size_t j, std::string witness)
        : Error("target is not ad-invariant: [X, e" + std::to_string(j + 1) +
                "] = " + witness + " escapes the span"),
          j(j), witness(std::move(witness)) {}
    std::size_t j;
    std::string witness;
};

// Characteristic polynomial has a factor with no Gaussian-rational root.
struct IrrationalSpectrum : Error {
    explicit IrrationalSpectrum(std::string factor)
        : Error("spectrum leaves the Gaussian rationals; irreducible factor " + factor),
          factor(std::move(factor)) {}
    std::string factor;
};

// A generalized eigenvector is not of the e^{lambda*y}*P(y)*Dx shape.
struct FormMismatch : Error {
    explicit FormMismatch(const std::string& what) : Error(what) {}
};

// Catalog family side condition violated.
struct InvalidParameters : Error {
    explicit InvalidParameters(const std::string& what) : Error(what) {}
};

// Derived series does not terminate at zero.
struct NotSolvable : Error {
    explicit NotSolvable(const std::string& what) : Error(what) {}
};

// Closed and solvable, but no catalog family's structural profile matches.
struct UnclassifiableForm : Error {
    explicit UnclassifiableForm(std::string reason)
        : Error("no canonical family matches: " + reason), reason(std::move(reason)) {}
    std::string reason;
};

// A canonicalization step needs a transformation outside the supported family.
struct NormalizationOutOfScope : Error {
    explicit NormalizationOutOfScope(std::string step)
        : Error("normalization out of scope: " + step), step(std::move(step)) {}
    std::string step;
};

// Parser error with position information (1-based line/column).
struct ParseError : Error {
    enum class Kind { Syntax, RingViolation, MixedBasis };
    ParseError(Kind kind, int line, int col, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                ": " + message),
          kind(kind), line(line), col(col) {}
    Kind kind;
    int line, col;
};

}  // namespace planarlie
