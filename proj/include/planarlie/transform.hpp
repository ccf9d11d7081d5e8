#pragma once

#include <string>
#include <variant>
#include <vector>

#include "planarlie/span.hpp"

namespace planarlie {

// x~ = alpha*x + f(y), y~ = y  (alpha != 0, f free of x)
struct ShearX {
    GaussianRational alpha;
    ExpPoly f;
};

// x~ = x, y~ = beta*y + c  (beta != 0)
struct AffineY {
    GaussianRational beta, c;
};

// x~ = y, y~ = x
struct SwapXY {};

using Move = std::variant<ShearX, AffineY, SwapXY>;

// Ordered composition of invertible moves, applied left to right.
class PointTransform {
  public:
    PointTransform() = default;
    explicit PointTransform(Move m) : moves_{std::move(m)} {}
    explicit PointTransform(std::vector<Move> moves) : moves_(std::move(moves)) {}

    static PointTransform identity() { return PointTransform(); }
    static PointTransform shear_x(const GaussianRational& alpha, ExpPoly f);
    static PointTransform affine_y(const GaussianRational& beta, const GaussianRational& c);
    static PointTransform swap_xy() { return PointTransform(Move(SwapXY{})); }

    const std::vector<Move>& moves() const { return moves_; }
    bool is_identity() const { return moves_.empty(); }
    PointTransform& then(Move m) {
        moves_.push_back(std::move(m));
        return *this;
    }
    PointTransform& then(const PointTransform& t) {
        for (const Move& m : t.moves_) moves_.push_back(m);
        return *this;
    }
    PointTransform inverse() const;

    std::string str() const;

  private:
    std::vector<Move> moves_;
};

// Exact pushforward of a field to the new coordinates; throws RingEscape
// when a substitution leaves the coefficient ring.
VectorField pushforward(const Move& m, const VectorField& v);
VectorField pushforward(const PointTransform& t, const VectorField& v);

// Basis-wise pushforward; dimension and structure constants are preserved.
AlgebraSpan pushforward_algebra(const PointTransform& t, const AlgebraSpan& g);

// F with F' = h for an x-free h; integration constant 0.
ExpPoly solve_antiderivative(const ExpPoly& h);

}  // namespace planarlie
