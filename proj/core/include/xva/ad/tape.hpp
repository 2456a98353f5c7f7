#pragma once

#include "xva/common/require.hpp"
#include "xva/math/normal.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace xva::ad {

class Tape;

enum class Op : std::uint8_t {
    input,
    constant,
    affine, // k*x + m with constant k, m folded at record time; pa = k
    add,
    sub,
    mul,
    div,
    exp_op,
    log_op,
    sqrt_op,
    pow_const, // x^c, exponent in aux
    pow_op,    // x^y, both recorded
    max0_op,   // max(x, 0); derivative 0 at the kink
    norm_cdf_op,
    norm_pdf_op,
    norm_quantile_op,
    binorm_cdf_op, // Phi2(x, y; rho), correlation in aux
};

// Handle to a tape node. Arithmetic on ActiveScalar values appends nodes whose
// cached values are computed with exactly the expressions a plain-double
// evaluation would use, so the taped forward value reproduces it bit for bit.
class ActiveScalar {
  public:
    ActiveScalar() = default;
    double value() const { return value_; }
    std::uint32_t id() const { return id_; }
    Tape* tape() const { return tape_; }

  private:
    friend class Tape;
    ActiveScalar(Tape* tape, std::uint32_t id, double value)
        : tape_(tape), id_(id), value_(value) {}
    Tape* tape_ = nullptr;
    std::uint32_t id_ = 0;
    double value_ = 0.0;
};

using Active = ActiveScalar;

// Dense partials of one recorded output with respect to every registered
// input, in registration order (zeros included).
class Gradient {
  public:
    Gradient() = default;
    explicit Gradient(std::vector<double> d) : d_(std::move(d)) {}
    double operator[](std::size_t k) const { return d_[k]; }
    std::size_t size() const { return d_.size(); }
    std::span<const double> values() const { return d_; }
    std::vector<double>& data() { return d_; }

  private:
    std::vector<double> d_;
};

// Dense symmetric Hessian of a cheap scalar function of few variables.
class SmallHessian {
  public:
    SmallHessian() = default;
    explicit SmallHessian(std::size_t dim) : dim_(dim), h_(dim * dim, 0.0) {}
    std::size_t dim() const { return dim_; }
    double& operator()(std::size_t i, std::size_t j) { return h_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return h_[i * dim_ + j]; }
    std::span<const double> data() const { return h_; }

    // Relative asymmetry observed before symmetrization.
    double pre_symmetry_asymmetry() const { return asym_; }

    void symmetrize() {
        double scale = 0.0, gap = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                gap = std::max(gap, std::fabs((*this)(i, j) - (*this)(j, i)));
                scale = std::max({scale, std::fabs((*this)(i, j)), std::fabs((*this)(j, i))});
            }
        asym_ = scale > 0.0 ? gap / scale : 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                const double m = 0.5 * ((*this)(i, j) + (*this)(j, i));
                (*this)(i, j) = m;
                (*this)(j, i) = m;
            }
    }

  private:
    std::size_t dim_ = 0;
    std::vector<double> h_;
    double asym_ = 0.0;
};

// Recording tape. One tape per worker; cleared and reused between paths.
// No shared mutable state, so any number of tapes may run concurrently.
class Tape {
  public:
    static constexpr std::uint32_t npos = 0xFFFFFFFFu;
    static constexpr std::size_t max_hessian_dim = 64;

    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    Active input(double v) {
        const auto id = push(Op::input, v, npos, npos, 0.0, 0.0);
        inputs_.push_back(id);
        return Active(this, id, v);
    }

    Active constant(double v) {
        return Active(this, push(Op::constant, v, npos, npos, 0.0, 0.0), v);
    }

    void clear() {
        nodes_.clear();
        inputs_.clear();
    }

    std::size_t n_nodes() const { return nodes_.size(); }
    std::size_t n_inputs() const { return inputs_.size(); }

    Gradient gradient(const Active& y) const {
        assert(y.tape() == this);
        sweep_adjoints(y.id());
        std::vector<double> g(inputs_.size());
        for (std::size_t k = 0; k < inputs_.size(); ++k) g[k] = adj_[inputs_[k]];
        return Gradient(std::move(g));
    }

    // Full Hessian over the registered inputs by forward-over-reverse:
    // one tangent + adjoint-tangent sweep per input direction.
    SmallHessian hessian(const Active& y) const {
        assert(y.tape() == this);
        const std::size_t dim = inputs_.size();
        XVA_REQUIRE(dim <= max_hessian_dim,
                    "small_hessian: " << dim << " inputs exceed the limit of "
                                      << max_hessian_dim
                                      << "; restructure the estimator so the weight "
                                         "depends on fewer variables at once");
        sweep_adjoints(y.id());
        SmallHessian h(dim);
        tan_.resize(nodes_.size());
        adjdot_.resize(nodes_.size());
        for (std::size_t k = 0; k < dim; ++k) {
            forward_tangent(inputs_[k], y.id());
            std::fill(adjdot_.begin(), adjdot_.begin() + y.id() + 1, 0.0);
            for (std::uint32_t i = y.id() + 1; i-- > 0;) {
                const Node& n = nodes_[i];
                const double bar = adj_[i];
                const double bardot = adjdot_[i];
                if (bar == 0.0 && bardot == 0.0) continue;
                if (n.a == npos) continue;
                double dpa = 0.0, dpb = 0.0;
                partial_tangents(n, dpa, dpb);
                adjdot_[n.a] += bardot * n.pa + bar * dpa;
                if (n.b != npos) adjdot_[n.b] += bardot * n.pb + bar * dpb;
            }
            for (std::size_t l = 0; l < dim; ++l) h(l, k) = adjdot_[inputs_[l]];
        }
        h.symmetrize();
        return h;
    }

    // Node builders used by the operator overloads.
    Active unary(Op op, double value, const Active& a, double pa, double aux = 0.0) {
        assert(a.tape() == this);
        return Active(this, push(op, value, a.id(), npos, pa, 0.0, aux), value);
    }
    Active binary(Op op, double value, const Active& a, const Active& b, double pa, double pb,
                  double aux = 0.0) {
        assert(a.tape() == this && b.tape() == this);
        return Active(this, push(op, value, a.id(), b.id(), pa, pb, aux), value);
    }

  private:
    struct Node {
        double value;
        double pa, pb;
        double aux;
        std::uint32_t a, b;
        Op op;
    };

    std::uint32_t push(Op op, double value, std::uint32_t a, std::uint32_t b, double pa, double pb,
                       double aux = 0.0) {
        nodes_.push_back(Node{value, pa, pb, aux, a, b, op});
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    void sweep_adjoints(std::uint32_t root) const {
        adj_.assign(nodes_.size(), 0.0);
        adj_[root] = 1.0;
        for (std::uint32_t i = root + 1; i-- > 0;) {
            const double bar = adj_[i];
            if (bar == 0.0) continue;
            const Node& n = nodes_[i];
            if (n.a == npos) continue;
            adj_[n.a] += bar * n.pa;
            if (n.b != npos) adj_[n.b] += bar * n.pb;
        }
    }

    void forward_tangent(std::uint32_t seed_input, std::uint32_t root) const {
        for (std::uint32_t i = 0; i <= root; ++i) {
            const Node& n = nodes_[i];
            if (n.a == npos) {
                tan_[i] = (i == seed_input) ? 1.0 : 0.0;
                continue;
            }
            double t = n.pa * tan_[n.a];
            if (n.b != npos) t += n.pb * tan_[n.b];
            tan_[i] = t;
        }
    }

    // Directional derivatives of the local partials along the current tangent.
    void partial_tangents(const Node& n, double& dpa, double& dpb) const {
        const double ta = tan_[n.a];
        const double tb = (n.b != npos) ? tan_[n.b] : 0.0;
        switch (n.op) {
            case Op::mul:
                dpa = tb;
                dpb = ta;
                break;
            case Op::div: {
                const double vb = nodes_[n.b].value;
                dpa = -tb / (vb * vb);
                dpb = (-ta + 2.0 * nodes_[n.a].value * tb / vb) / (vb * vb);
                break;
            }
            case Op::exp_op:
                dpa = n.value * ta;
                break;
            case Op::log_op: {
                const double va = nodes_[n.a].value;
                dpa = -ta / (va * va);
                break;
            }
            case Op::sqrt_op:
                dpa = -0.5 * n.pa / nodes_[n.a].value * ta;
                break;
            case Op::pow_const: {
                const double c = n.aux;
                dpa = c * (c - 1.0) * std::pow(nodes_[n.a].value, c - 2.0) * ta;
                break;
            }
            case Op::pow_op: {
                const double va = nodes_[n.a].value;
                const double vb = nodes_[n.b].value;
                const double lg = std::log(va);
                const double paa = vb * (vb - 1.0) * std::pow(va, vb - 2.0);
                const double pab = std::pow(va, vb - 1.0) * (1.0 + vb * lg);
                const double pbb = n.value * lg * lg;
                dpa = paa * ta + pab * tb;
                dpb = pab * ta + pbb * tb;
                break;
            }
            case Op::norm_cdf_op: {
                const double va = nodes_[n.a].value;
                dpa = -va * n.pa * ta;
                break;
            }
            case Op::norm_pdf_op: {
                const double va = nodes_[n.a].value;
                dpa = (va * va - 1.0) * n.value * ta;
                break;
            }
            case Op::norm_quantile_op:
                dpa = n.value * n.pa * n.pa * ta;
                break;
            case Op::binorm_cdf_op: {
                const double va = nodes_[n.a].value;
                const double vb = nodes_[n.b].value;
                const double rho = n.aux;
                const double s = std::sqrt(1.0 - rho * rho);
                const double pdf2 = math::norm_pdf(va) * math::norm_pdf((vb - rho * va) / s) / s;
                const double paa = -va * n.pa - rho * pdf2;
                const double pbb = -vb * n.pb - rho * pdf2;
                dpa = paa * ta + pdf2 * tb;
                dpb = pdf2 * ta + pbb * tb;
                break;
            }
            default:
                // input, constant, affine, add, sub, max0: locally linear
                break;
        }
    }

    std::vector<Node> nodes_;
    std::vector<std::uint32_t> inputs_;
    mutable std::vector<double> adj_, tan_, adjdot_;
};

// --- arithmetic ---------------------------------------------------------

inline Active operator+(const Active& a, const Active& b) {
    return a.tape()->binary(Op::add, a.value() + b.value(), a, b, 1.0, 1.0);
}
inline Active operator+(const Active& a, double c) {
    return a.tape()->unary(Op::affine, a.value() + c, a, 1.0);
}
inline Active operator+(double c, const Active& a) { return a + c; }

inline Active operator-(const Active& a, const Active& b) {
    return a.tape()->binary(Op::sub, a.value() - b.value(), a, b, 1.0, -1.0);
}
inline Active operator-(const Active& a, double c) {
    return a.tape()->unary(Op::affine, a.value() - c, a, 1.0);
}
inline Active operator-(double c, const Active& a) {
    return a.tape()->unary(Op::affine, c - a.value(), a, -1.0);
}
inline Active operator-(const Active& a) {
    return a.tape()->unary(Op::affine, -a.value(), a, -1.0);
}
inline Active operator+(const Active& a) { return a; }

inline Active operator*(const Active& a, const Active& b) {
    return a.tape()->binary(Op::mul, a.value() * b.value(), a, b, b.value(), a.value());
}
inline Active operator*(const Active& a, double c) {
    return a.tape()->unary(Op::affine, a.value() * c, a, c);
}
inline Active operator*(double c, const Active& a) { return a * c; }

inline Active operator/(const Active& a, const Active& b) {
    return a.tape()->binary(Op::div, a.value() / b.value(), a, b, 1.0 / b.value(),
                            -a.value() / (b.value() * b.value()));
}
inline Active operator/(const Active& a, double c) {
    return a.tape()->unary(Op::affine, a.value() / c, a, 1.0 / c);
}
inline Active operator/(double c, const Active& a) {
    Active num = a.tape()->constant(c);
    return a.tape()->binary(Op::div, c / a.value(), num, a, 1.0 / a.value(),
                            -c / (a.value() * a.value()));
}

inline Active& operator+=(Active& a, const Active& b) { return a = a + b; }
inline Active& operator+=(Active& a, double c) { return a = a + c; }
inline Active& operator-=(Active& a, const Active& b) { return a = a - b; }
inline Active& operator-=(Active& a, double c) { return a = a - c; }
inline Active& operator*=(Active& a, const Active& b) { return a = a * b; }
inline Active& operator*=(Active& a, double c) { return a = a * c; }
inline Active& operator/=(Active& a, const Active& b) { return a = a / b; }
inline Active& operator/=(Active& a, double c) { return a = a / c; }

// --- nonlinear primitives ------------------------------------------------

inline Active exp(const Active& a) {
    const double v = std::exp(a.value());
    return a.tape()->unary(Op::exp_op, v, a, v);
}
inline Active log(const Active& a) {
    XVA_REQUIRE(a.value() > 0.0, "log: nonpositive argument " << a.value());
    return a.tape()->unary(Op::log_op, std::log(a.value()), a, 1.0 / a.value());
}
inline Active sqrt(const Active& a) {
    XVA_REQUIRE(a.value() >= 0.0, "sqrt: negative argument " << a.value());
    const double v = std::sqrt(a.value());
    return a.tape()->unary(Op::sqrt_op, v, a, 0.5 / v);
}
inline Active pow(const Active& a, double c) {
    const double v = std::pow(a.value(), c);
    return a.tape()->unary(Op::pow_const, v, a, c * std::pow(a.value(), c - 1.0), c);
}
inline Active pow(const Active& a, const Active& b) {
    const double v = std::pow(a.value(), b.value());
    return a.tape()->binary(Op::pow_op, v, a, b, b.value() * std::pow(a.value(), b.value() - 1.0),
                            v * std::log(a.value()));
}
inline Active max0(const Active& a) {
    return a.tape()->unary(Op::max0_op, std::max(a.value(), 0.0), a, a.value() > 0.0 ? 1.0 : 0.0);
}
inline Active norm_cdf(const Active& a) {
    return a.tape()->unary(Op::norm_cdf_op, math::norm_cdf(a.value()), a,
                           math::norm_pdf(a.value()));
}
inline Active norm_pdf(const Active& a) {
    const double v = math::norm_pdf(a.value());
    return a.tape()->unary(Op::norm_pdf_op, v, a, -a.value() * v);
}
inline Active norm_quantile(const Active& a) {
    XVA_REQUIRE(a.value() > 0.0 && a.value() < 1.0,
                "norm_quantile: argument " << a.value() << " outside (0,1)");
    const double v = math::norm_quantile(a.value());
    return a.tape()->unary(Op::norm_quantile_op, v, a, 1.0 / math::norm_pdf(v));
}
inline Active binorm_cdf(const Active& a, const Active& b, double rho) {
    const double s = std::sqrt(1.0 - rho * rho);
    const double v = math::binorm_cdf(a.value(), b.value(), rho);
    const double pa = math::norm_pdf(a.value()) * math::norm_cdf((b.value() - rho * a.value()) / s);
    const double pb = math::norm_pdf(b.value()) * math::norm_cdf((a.value() - rho * b.value()) / s);
    return a.tape()->binary(Op::binorm_cdf_op, v, a, b, pa, pb, rho);
}

// --- comparisons produce plain constants ---------------------------------

inline bool operator<(const Active& a, const Active& b) { return a.value() < b.value(); }
inline bool operator<(const Active& a, double c) { return a.value() < c; }
inline bool operator<(double c, const Active& a) { return c < a.value(); }
inline bool operator<=(const Active& a, const Active& b) { return a.value() <= b.value(); }
inline bool operator<=(const Active& a, double c) { return a.value() <= c; }
inline bool operator<=(double c, const Active& a) { return c <= a.value(); }
inline bool operator>(const Active& a, const Active& b) { return a.value() > b.value(); }
inline bool operator>(const Active& a, double c) { return a.value() > c; }
inline bool operator>(double c, const Active& a) { return c > a.value(); }
inline bool operator>=(const Active& a, const Active& b) { return a.value() >= b.value(); }
inline bool operator>=(const Active& a, double c) { return a.value() >= c; }
inline bool operator>=(double c, const Active& a) { return c >= a.value(); }

// --- recording convenience (spec-level surface) ---------------------------

struct Recording {
    std::unique_ptr<Tape> tape;
    Active output;
    double value = 0.0;
};

template <class F>
Recording record(std::span<const double> x, F&& f) {
    Recording rec;
    rec.tape = std::make_unique<Tape>();
    std::vector<Active> in;
    in.reserve(x.size());
    for (double v : x) in.push_back(rec.tape->input(v));
    rec.output = std::forward<F>(f)(std::span<const Active>(in));
    rec.value = rec.output.value();
    return rec;
}

inline Gradient gradient(const Recording& rec) { return rec.tape->gradient(rec.output); }

template <class F>
SmallHessian small_hessian(std::span<const double> x, F&& f) {
    const Recording rec = record(x, std::forward<F>(f));
    return rec.tape->hessian(rec.output);
}

} // namespace xva::ad
