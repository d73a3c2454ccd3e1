#pragma once
/**
 * @file quadrature.hpp
 * @brief Gauss-Legendre rules with 1 to 10 points.
 *
 * Abscissae and weights on [-1, 1], sorted by abscissa, to 34 significant
 * digits (standard tables).
 */

#include "shotr/errors.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>

namespace shotr {

inline constexpr int kMaxGaussPoints = 10;

struct GaussRule {
    int points;
    std::array<double, kMaxGaussPoints> nodes;
    std::array<double, kMaxGaussPoints> weights;

    std::span<const double> abscissae() const noexcept {
        return {nodes.data(), static_cast<std::size_t>(points)};
    }
    std::span<const double> weight_span() const noexcept {
        return {weights.data(), static_cast<std::size_t>(points)};
    }
};

namespace detail {

inline constexpr std::array<GaussRule, kMaxGaussPoints> kGaussLegendre{{
    // 1 point
    {1,
     {0.0},
     {2.0}},
    // 2 points
    {2,
     {-0.5773502691896257645091487805019575,
      0.5773502691896257645091487805019575},
     {1.0,
      1.0}},
    // 3 points
    {3,
     {-0.7745966692414833770358530799564799,
      0.0,
      0.7745966692414833770358530799564799},
     {0.5555555555555555555555555555555556,
      0.8888888888888888888888888888888889,
      0.5555555555555555555555555555555556}},
    // 4 points
    {4,
     {-0.8611363115940525752239464888928095,
      -0.3399810435848562648026657591032447,
      0.3399810435848562648026657591032447,
      0.8611363115940525752239464888928095},
     {0.3478548451374538573730639492219994,
      0.6521451548625461426269360507780006,
      0.6521451548625461426269360507780006,
      0.3478548451374538573730639492219994}},
    // 5 points
    {5,
     {-0.906179845938663992797626878299393,
      -0.5384693101056830910363144207002088,
      0.0,
      0.5384693101056830910363144207002088,
      0.906179845938663992797626878299393},
     {0.2369268850561890875142640407199174,
      0.4786286704993664680412915148356382,
      0.5688888888888888888888888888888889,
      0.4786286704993664680412915148356382,
      0.2369268850561890875142640407199174}},
    // 6 points
    {6,
     {-0.9324695142031520278123015544939946,
      -0.6612093864662645136613995950199053,
      -0.2386191860831969086305017216807119,
      0.2386191860831969086305017216807119,
      0.6612093864662645136613995950199053,
      0.9324695142031520278123015544939946},
     {0.1713244923791703450402961421727329,
      0.3607615730481386075698335138377161,
      0.467913934572691047389870343989551,
      0.467913934572691047389870343989551,
      0.3607615730481386075698335138377161,
      0.1713244923791703450402961421727329}},
    // 7 points
    {7,
     {-0.9491079123427585245261896840478513,
      -0.7415311855993944398638647732807884,
      -0.4058451513773971669066064120769615,
      0.0,
      0.4058451513773971669066064120769615,
      0.7415311855993944398638647732807884,
      0.9491079123427585245261896840478513},
     {0.129484966168869693270611432679082,
      0.2797053914892766679014677714237796,
      0.3818300505051189449503697754889751,
      0.4179591836734693877551020408163265,
      0.3818300505051189449503697754889751,
      0.2797053914892766679014677714237796,
      0.129484966168869693270611432679082}},
    // 8 points
    {8,
     {-0.960289856497536231683560868569473,
      -0.7966664774136267395915539364758304,
      -0.5255324099163289858177390491892463,
      -0.183434642495649804939476142360184,
      0.183434642495649804939476142360184,
      0.5255324099163289858177390491892463,
      0.7966664774136267395915539364758304,
      0.960289856497536231683560868569473},
     {0.1012285362903762591525313543099622,
      0.2223810344533744705443559944262409,
      0.3137066458778872873379622019866013,
      0.3626837833783619829651504492771956,
      0.3626837833783619829651504492771956,
      0.3137066458778872873379622019866013,
      0.2223810344533744705443559944262409,
      0.1012285362903762591525313543099622}},
    // 9 points
    {9,
     {-0.9681602395076260898355762029036729,
      -0.8360311073266357942994297880697349,
      -0.6133714327005903973087020393414742,
      -0.3242534234038089290385380146433366,
      0.0,
      0.3242534234038089290385380146433366,
      0.6133714327005903973087020393414742,
      0.8360311073266357942994297880697349,
      0.9681602395076260898355762029036729},
     {0.08127438836157441197189215811052365,
      0.1806481606948574040584720312429128,
      0.2606106964029354623187428694186328,
      0.3123470770400028400686304065844437,
      0.330239355001259763164525069286974,
      0.3123470770400028400686304065844437,
      0.2606106964029354623187428694186328,
      0.1806481606948574040584720312429128,
      0.08127438836157441197189215811052365}},
    // 10 points
    {10,
     {-0.9739065285171717200779640120844521,
      -0.865063366688984510732096688423493,
      -0.6794095682990244062343273651148736,
      -0.4333953941292471907992659431657842,
      -0.14887433898163121088482600112972,
      0.14887433898163121088482600112972,
      0.4333953941292471907992659431657842,
      0.6794095682990244062343273651148736,
      0.865063366688984510732096688423493,
      0.9739065285171717200779640120844521},
     {0.06667134430868813759356880989333179,
      0.1494513491505805931457763396576973,
      0.2190863625159820439955349342281632,
      0.2692667193099963550912269215694694,
      0.2955242247147528701738929946513383,
      0.2955242247147528701738929946513383,
      0.2692667193099963550912269215694694,
      0.2190863625159820439955349342281632,
      0.1494513491505805931457763396576973,
      0.06667134430868813759356880989333179}},
}};

}  // namespace detail

inline const GaussRule& gauss_legendre(int points) {
    if (points < 1 || points > kMaxGaussPoints)
        throw UnsupportedDegree("Gauss-Legendre rule with " + std::to_string(points) +
                                " points is not tabulated (1..10)");
    return detail::kGaussLegendre[static_cast<std::size_t>(points - 1)];
}

/// Integrates f over [a, b] with an n-point rule.
template <class F>
double integrate(F&& f, double a, double b, int points) {
    const GaussRule& rule = gauss_legendre(points);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (int q = 0; q < rule.points; ++q) sum += rule.weights[q] * f(mid + half * rule.nodes[q]);
    return half * sum;
}

/// Maps a [-1, 1] abscissa onto [a, b].
inline double map_abscissa(double xi, double a, double b) noexcept {
    return 0.5 * (a + b) + 0.5 * (b - a) * xi;
}

}  // namespace shotr
