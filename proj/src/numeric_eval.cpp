#include "kleinian/numeric_eval.hpp"

#include <random>

#include "kleinian/local_expansion.hpp"

namespace kleinian {

Complex eval_poly(const GradedPoly& p, const std::vector<Complex>& values) {
    const Ring& r = p.ring();
    // per-symbol power tables up to the max exponent present
    std::vector<std::vector<Complex>> pow(r.size());
    for (size_t i = 0; i < r.size(); ++i) pow[i].push_back(Complex(1));
    for (const Term& t : p.terms())
        for (size_t i = 0; i < r.size(); ++i)
            while (pow[i].size() <= size_t(t.e[i])) pow[i].push_back(pow[i].back() * values[i]);
    using Real = boost::multiprecision::cpp_bin_float_50;
    Complex acc(0);
    for (const Term& t : p.terms()) {
        Complex m(Real(t.c.num().get_str()));
        m /= Complex(Real(t.c.den().get_str()));
        for (size_t i = 0; i < r.size(); ++i)
            if (t.e[i]) m *= pow[i][t.e[i]];
        acc += m;
    }
    return acc;
}

nlohmann::json PoleProbeResult::to_json() const {
    nlohmann::json j;
    j["estimated_order"] = estimated_order;
    j["fitted_slope"] = fitted_slope;
    j["fit_residual"] = fit_residual;
    j["decades"] = decades;
    j["eps"] = eps;
    j["log_values"] = log_values;
    j["per_trial_order"] = per_trial_order;
    return j;
}

PoleProbeResult pole_order_probe(const WpExpr& e, Compiler& compiler,
                                 const PoleProbeOptions& opts) {
    const SigmaModel& model = compiler.model();
    const int g = model.genus();
    if (g < 2) throw std::invalid_argument("pole_order_probe: needs genus >= 2");
    std::mt19937_64 rng(opts.seed);

    // lambda sample
    std::map<int, Rational> lam = opts.lambda_values;
    if (lam.empty()) {
        std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
        for (int j = 0; j < model.curve.s; ++j) lam[j] = Rational(num(rng), den(rng));
    }

    SigmaRationalForm form = compiler.compile(e);
    const Series& sig = model.sigma;
    std::vector<GradedPoly> grads;
    for (int i = 1; i <= g; ++i) grads.push_back(sig.poly().diff(model.ring.require(u_name(i))));

    StrataEmbedding emb = strata_embedding(model.curve, g - 1, model.cap);

    auto ring_values = [&](const Ring& r, const std::map<std::string, Complex>& named) {
        std::vector<Complex> vals(r.size(), Complex(0));
        for (size_t i = 0; i < r.size(); ++i) {
            const std::string& name = r.at(i).name;
            auto it = named.find(name);
            if (it != named.end()) {
                vals[i] = it->second;
            } else {
                // lambda symbol
                using Real = boost::multiprecision::cpp_bin_float_50;
                for (const auto& [j, v] : lam)
                    if (name == lambda_name(j)) {
                        Complex c(Real(v.num().get_str()));
                        c /= Complex(Real(v.den().get_str()));
                        vals[i] = c;
                    }
            }
        }
        return vals;
    };

    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto random_complex = [&](double scale) {
        return Complex(unit(rng) * scale, unit(rng) * scale);
    };

    PoleProbeResult out;
    const double log_step = 1.0 / opts.points_per_decade;
    for (int trial = 0; trial < opts.trials; ++trial) {
        // strata point
        std::map<std::string, Complex> xi;
        for (int i = 1; i <= g - 1; ++i)
            xi["xi" + std::to_string(i)] = random_complex(opts.xi_radius);
        std::vector<Complex> xw = ring_values(emb.ring, xi);
        std::vector<Complex> u0(size_t(g));
        for (int i = 0; i < g; ++i) u0[size_t(i)] = eval_poly(emb.u[size_t(i)].poly(), xw);

        // direction with a healthy pairing against grad sigma
        std::vector<Complex> w(size_t(g));
        Complex pairing(0);
        for (int attempt = 0; attempt < 32; ++attempt) {
            for (int i = 0; i < g; ++i) w[size_t(i)] = random_complex(1.0);
            std::map<std::string, Complex> upoint;
            for (int i = 1; i <= g; ++i) upoint[u_name(i)] = u0[size_t(i - 1)];
            std::vector<Complex> uv = ring_values(model.ring, upoint);
            Complex dot(0);
            double norm = 0;
            for (int i = 0; i < g; ++i) {
                Complex gi = eval_poly(grads[size_t(i)], uv);
                dot += gi * w[size_t(i)];
                norm += abs(gi).convert_to<double>();
            }
            pairing = dot;
            if (abs(dot).convert_to<double>() > 1e-6 * std::max(norm, 1e-30)) break;
        }
        (void)pairing;

        std::vector<double> xs, ys;
        double le = std::log10(opts.eps_lo), he = std::log10(opts.eps_hi);
        for (double lg = he; lg >= le - 1e-9; lg -= log_step) {
            double eps = std::pow(10.0, lg);
            std::map<std::string, Complex> upoint;
            for (int i = 1; i <= g; ++i)
                upoint[u_name(i)] = u0[size_t(i - 1)] + Complex(eps) * w[size_t(i - 1)];
            std::vector<Complex> uv = ring_values(model.ring, upoint);
            Complex numv = eval_poly(form.numerator.poly(), uv);
            Complex sigv = eval_poly(sig.poly(), uv);
            Complex val = numv;
            for (int k = 0; k < form.denom_power; ++k) val /= sigv;
            double av = abs(val).convert_to<double>();
            if (av <= 0) continue;
            xs.push_back(lg);
            ys.push_back(std::log10(av));
        }
        // least-squares slope
        double n = double(xs.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        double intercept = (sy - slope * sx) / n;
        double rss = 0;
        for (size_t i = 0; i < xs.size(); ++i) {
            double d = ys[i] - (slope * xs[i] + intercept);
            rss += d * d;
        }
        double rms = std::sqrt(rss / n);
        out.per_trial_order.push_back(-slope);
        if (trial == 0) {
            out.fitted_slope = slope;
            out.fit_residual = rms;
            out.decades = int(he - le + 0.5);
            for (double lg = he; lg >= le - 1e-9; lg -= log_step) out.eps.push_back(std::pow(10.0, lg));
            out.log_values = ys;
        }
    }
    double avg = 0;
    for (double v : out.per_trial_order) avg += v;
    out.estimated_order = avg / double(out.per_trial_order.size());
    return out;
}

}  // namespace kleinian
