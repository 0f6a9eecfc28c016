// lumloc - indoor positioning from visible-light RSSI with fuzzy inference
// and particle-swarm tuned controllers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "lumloc/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include "detail/strjoin.hpp"

#include "lumloc/errors.hpp"

namespace lumloc {

double mf_eval(const TriangularMf& mf, double x) {
    // Keep in lockstep with the kernel tri_mu: select, then clamp.
    const double rising = (x - mf.a) / (mf.m - mf.a);
    const double falling = (mf.b - x) / (mf.b - mf.m);
    double v = x < mf.m ? rising : (x > mf.m ? falling : 1.0);
    v = v > 0.0 ? v : 0.0;
    v = v < 1.0 ? v : 1.0;
    return v;
}

std::array<double, 3> fuzzify(const FuzzyVariable& var, double x) {
    const double cx = std::clamp(x, var.lo, var.hi);
    return {mf_eval(var.terms[0], cx), mf_eval(var.terms[1], cx), mf_eval(var.terms[2], cx)};
}

TermIndex consequent_term_label(double consequent) {
    if (consequent < 1.0 / 3.0)
        return TermIndex::low;
    if (consequent < 2.0 / 3.0)
        return TermIndex::medium;
    return TermIndex::high;
}

double clipped_centroid(const TriangularMf& mf, double h) {
    if (mf.b <= mf.a)
        return mf.m;
    // Clipping a triangle at height h leaves a trapezoid; integrate its two
    // ramps and the flat top analytically.
    const double ra = mf.m - mf.a;
    const double fa = mf.b - mf.m;
    const double xl = mf.a + ra * h;
    const double xr = mf.b - fa * h;
    const double area = ra * h * h / 2.0 + h * (xr - xl) + fa * h * h / 2.0;
    if (area <= 0.0)
        return mf.m;
    const double m_rise = ra * ra * h * h * h / 3.0 + mf.a * ra * h * h / 2.0;
    const double m_flat = h * (xr * xr - xl * xl) / 2.0;
    const double m_fall = mf.b * fa * h * h / 2.0 - fa * fa * h * h * h / 3.0;
    return (m_rise + m_flat + m_fall) / area;
}

kernels::SingletonPack make_singleton_pack(const FlcSpec& spec) {
    kernels::SingletonPack p;
    p.lo1 = spec.input1.lo;
    p.hi1 = spec.input1.hi;
    p.lo2 = spec.input2.lo;
    p.hi2 = spec.input2.hi;
    for (int t = 0; t < 3; ++t) {
        p.a1[t] = spec.input1.terms[t].a;
        p.m1[t] = spec.input1.terms[t].m;
        p.b1[t] = spec.input1.terms[t].b;
        p.a2[t] = spec.input2.terms[t].a;
        p.m2[t] = spec.input2.terms[t].m;
        p.b2[t] = spec.input2.terms[t].b;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            p.consequent[i * 3 + j] = spec.rules.consequents[i][j];
    p.product_tnorm = spec.tnorm == TNorm::product;
    return p;
}

namespace {

double tnorm_apply(TNorm t, double a, double b) {
    return t == TNorm::product ? a * b : (a < b ? a : b);
}

// Mamdani path shared by scalar and batch entry points. Returns false when no
// rule fires.
bool mamdani_infer(const FlcSpec& spec, double x1, double x2, double& out) {
    const auto mu1 = fuzzify(spec.input1, x1);
    const auto mu2 = fuzzify(spec.input2, x2);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double s = tnorm_apply(spec.tnorm, mu1[i], mu2[j]);
            if (s <= 0.0)
                continue;
            const auto label = consequent_term_label(spec.rules.consequents[i][j]);
            const double c = clipped_centroid(spec.output.term(label), s);
            num += s * c;
            den += s;
        }
    }
    if (den <= 0.0)
        return false;
    out = num / den;
    return true;
}

} // namespace

double flc_infer(const FlcSpec& spec, double x1, double x2) {
    if (spec.mode == InferenceMode::singleton) {
        const auto pack = make_singleton_pack(spec);
        double out = 0.0;
        std::size_t zero_fired = 0;
        kernels::flc_singleton_batch(pack, &x1, &x2, 1, &out, &zero_fired);
        if (zero_fired)
            throw Error(Errc::zero_firing,
                        detail::strjoin("no rule fired at (", x1, ", ", x2, ")"));
        return out;
    }
    double out = 0.0;
    if (!mamdani_infer(spec, x1, x2, out))
        throw Error(Errc::zero_firing, detail::strjoin("no rule fired at (", x1, ", ", x2, ")"));
    return out;
}

void flc_infer_batch(const FlcSpec& spec, std::span<const double> x1, std::span<const double> x2,
                     std::span<double> out, std::size_t* zero_fired) {
    if (x1.size() != x2.size() || x1.size() != out.size())
        throw Error(Errc::mismatched_lengths, "batch spans must have equal length");
    if (spec.mode == InferenceMode::singleton) {
        const auto pack = make_singleton_pack(spec);
        kernels::flc_singleton_batch(pack, x1.data(), x2.data(), x1.size(), out.data(),
                                     zero_fired);
        return;
    }
    std::size_t zf = 0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
        if (!mamdani_infer(spec, x1[i], x2[i], out[i])) {
            out[i] = 0.0;
            ++zf;
        }
    }
    if (zero_fired)
        *zero_fired = zf;
}

namespace {

void validate_variable(const FuzzyVariable& var, const std::string& role,
                       std::vector<std::string>& out) {
    if (!(var.lo < var.hi)) {
        out.push_back(detail::strjoin(role, " (", var.name, "): empty universe [", var.lo, ", ",
                                        var.hi, "]"));
        return;
    }
    for (int t = 0; t < 3; ++t) {
        const auto& mf = var.terms[t];
        if (!mf.valid())
            out.push_back(detail::strjoin(role, " (", var.name, "): term ", kTermNames[t],
                                            " not ordered (a=", mf.a, ", m=", mf.m, ", b=",
                                            mf.b, ")"));
        if (mf.a < var.lo || mf.b > var.hi)
            out.push_back(detail::strjoin(role, " (", var.name, "): term ", kTermNames[t],
                                            " outside universe"));
    }

    // Free-parameter orderings, non-strict so shoulder-shaped defaults pass.
    // Fixed references: a_L = Low.a, b_M = Medium.m, c_H = High.b.
    const auto& L = var.terms[0];
    const auto& M = var.terms[1];
    const auto& H = var.terms[2];
    struct Check {
        int rule;
        double lo, v, hi;
        const char* what;
    };
    const Check checks[] = {
        {1, L.a, L.b, M.m, "a_L <= c_L <= b_M"}, {2, L.a, L.m, L.b, "a_L <= b_L <= c_L"},
        {3, L.a, M.a, L.b, "a_L <= a_M <= c_L"}, {4, M.m, M.b, H.b, "b_M <= c_M <= c_H"},
        {5, M.m, H.a, M.b, "b_M <= a_H <= c_M"}, {6, H.a, H.m, H.b, "a_H <= b_H <= c_H"},
    };
    for (const auto& c : checks) {
        if (!(c.lo <= c.v && c.v <= c.hi))
            out.push_back(detail::strjoin(role, " (", var.name, "): constraint ", c.rule,
                                            " violated (", c.what, ")"));
    }

    // Coverage sampled on the open interior: decoded optimizer candidates may
    // legitimately have zero membership at the exact universe endpoints.
    constexpr int kSamples = 1000;
    for (int k = 0; k < kSamples; ++k) {
        const double x = var.lo + (k + 0.5) * (var.hi - var.lo) / kSamples;
        if (mf_eval(L, x) <= 0.0 && mf_eval(M, x) <= 0.0 && mf_eval(H, x) <= 0.0) {
            out.push_back(detail::strjoin(role, " (", var.name, "): no term covers x=", x));
            break;
        }
    }
}

} // namespace

std::vector<std::string> validate_flc(const FlcSpec& spec) {
    std::vector<std::string> out;
    validate_variable(spec.input1, "input1", out);
    validate_variable(spec.input2, "input2", out);
    validate_variable(spec.output, "output", out);
    if (spec.output.lo != 0.0 || spec.output.hi != 1.0)
        out.push_back("output: universe must be [0, 1]");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double c = spec.rules.consequents[i][j];
            if (!(c >= 0.0 && c <= 1.0))
                out.push_back(detail::strjoin("rules[", i, "][", j, "] = ", c, " outside [0, 1]"));
        }
    return out;
}

namespace {

FuzzyVariable unit_variable(std::string name) {
    FuzzyVariable v;
    v.name = std::move(name);
    v.lo = 0.0;
    v.hi = 1.0;
    v.terms = {TriangularMf{0.0, 0.0, 0.5}, TriangularMf{0.0, 0.5, 1.0},
               TriangularMf{0.5, 1.0, 1.0}};
    return v;
}

} // namespace

FlcSpec default_flc1() {
    FlcSpec spec;
    spec.input1.name = "Z%";
    spec.input1.lo = 0.0;
    spec.input1.hi = 100.0;
    spec.input1.terms = {TriangularMf{0.0, 0.0, 50.0}, TriangularMf{0.0, 50.0, 100.0},
                         TriangularMf{50.0, 100.0, 100.0}};
    spec.input2 = unit_variable("K");
    spec.output = unit_variable("model reliability");
    spec.rules.consequents = {{{0.03, 0.06, 0.15}, {0.25, 0.45, 0.75}, {0.65, 0.85, 1.0}}};
    return spec;
}

FlcSpec default_flc2() {
    FlcSpec spec;
    spec.input1 = unit_variable("anchor reliability");
    spec.input2 = unit_variable("normalized RSSI");
    spec.output = unit_variable("total reliability");
    spec.rules.consequents = {{{0.001, 0.3, 0.7}, {0.01, 0.4, 0.9}, {0.3, 0.6, 1.0}}};
    return spec;
}

} // namespace lumloc
