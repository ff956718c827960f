#include "gribov/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <stdexcept>

namespace gribov {

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double* err_estimate) {
    using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    double err = 0.0;
    const double val = rule::integrate(f, a, b, 15, rel_tol, &err);
    if (err_estimate) *err_estimate = err;
    return val;
}

QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels) {
    if (panels == 0) throw std::invalid_argument("composite rule needs at least one panel");
    if (!(b > a)) throw std::invalid_argument("composite rule needs b > a");
    using rule = boost::math::quadrature::gauss<double, 32>;
    const auto& half_nodes = rule::abscissa(); // 16 positive abscissas, ascending
    const auto& half_weights = rule::weights();
    const std::size_t m = half_nodes.size();

    QuadratureRule out;
    out.nodes.reserve(panels * 2 * m);
    out.weights.reserve(panels * 2 * m);
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double c = a + (static_cast<double>(p) + 0.5) * h;
        const double s = 0.5 * h;
        for (std::size_t i = m; i-- > 0;) {
            out.nodes.push_back(c - s * half_nodes[i]);
            out.weights.push_back(s * half_weights[i]);
        }
        for (std::size_t i = 0; i < m; ++i) {
            out.nodes.push_back(c + s * half_nodes[i]);
            out.weights.push_back(s * half_weights[i]);
        }
    }
    return out;
}

} // namespace gribov
