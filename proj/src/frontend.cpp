#include "jsfr/frontend.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jsfr {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::PbsBaseline: return "pbs_baseline";
        case Scheme::Coupler2x2:  return "coupler_2x2";
        case Scheme::Hybrid90:    return "hybrid_90";
        case Scheme::Coupler3x3:  return "coupler_3x3";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "pbs_baseline") return Scheme::PbsBaseline;
    if (name == "coupler_2x2") return Scheme::Coupler2x2;
    if (name == "hybrid_90") return Scheme::Hybrid90;
    if (name == "coupler_3x3") return Scheme::Coupler3x3;
    throw std::invalid_argument("unknown front-end scheme: " + name);
}

cplx CouplerConstants::a() {
    const double t = 2.0 * std::numbers::pi / 9.0;
    return (2.0 * std::polar(1.0, t) + std::polar(1.0, -2.0 * t)) / 3.0;
}

cplx CouplerConstants::b() {
    const double t = 2.0 * std::numbers::pi / 9.0;
    return (std::polar(1.0, -2.0 * t) - std::polar(1.0, t)) / 3.0;
}

std::size_t BranchSet::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return i;
    }
    throw std::out_of_range("branch label not present: " + label);
}

namespace {

ComplexSignal combine(const JonesSignal& sig, cplx cx, cplx cy) {
    ComplexSignal out = sig.x;
    for (std::size_t n = 0; n < sig.size(); ++n) {
        out.samples[n] = cx * sig.x.samples[n] + cy * sig.y.samples[n];
    }
    return out;
}

}  // namespace

BranchSet split_branches(const JonesSignal& sig, Scheme scheme) {
    BranchSet bs;
    bs.scheme = scheme;
    bs.sample_rate = sig.sample_rate();
    const cplx j(0.0, 1.0);
    switch (scheme) {
        case Scheme::PbsBaseline:
            bs.labels = {"X", "Y"};
            bs.fields = {sig.x, sig.y};
            break;
        case Scheme::Coupler2x2:
            bs.labels = {"X", "Y", "X+Y", "X-Y"};
            bs.fields = {sig.x, sig.y, combine(sig, 1.0, 1.0),
                         combine(sig, 1.0, -1.0)};
            break;
        case Scheme::Hybrid90:
            bs.labels = {"X+Y", "X-Y", "X+jY", "X-jY"};
            bs.fields = {combine(sig, 1.0, 1.0), combine(sig, 1.0, -1.0),
                         combine(sig, 1.0, j), combine(sig, 1.0, -j)};
            break;
        case Scheme::Coupler3x3: {
            const cplx a = CouplerConstants::a();
            const cplx b = CouplerConstants::b();
            bs.labels = {"aX+bY", "bX+bY", "bX+aY"};
            bs.fields = {combine(sig, a, b), combine(sig, b, b),
                         combine(sig, b, a)};
            break;
        }
        default:
            throw std::invalid_argument("split_branches: unknown scheme");
    }
    return bs;
}

void detect(BranchSet& branches, std::optional<double> electrical_snr_db,
            RandomStream* rng) {
    if (branches.fields.empty()) {
        throw std::invalid_argument("detect: no optical fields present");
    }
    branches.currents.clear();
    branches.currents.reserve(branches.fields.size());
    for (const auto& field : branches.fields) {
        std::vector<double> cur(field.size());
        for (std::size_t n = 0; n < field.size(); ++n) {
            cur[n] = std::norm(field.samples[n]);
        }
        if (electrical_snr_db) {
            if (rng == nullptr) {
                throw std::invalid_argument("detect: noise requested without rng");
            }
            double mean = 0.0;
            for (double v : cur) mean += v;
            mean /= static_cast<double>(cur.size());
            double var = 0.0;
            for (double v : cur) var += (v - mean) * (v - mean);
            var /= static_cast<double>(cur.size());
            const double snr = std::pow(10.0, *electrical_snr_db / 10.0);
            const double sigma = std::sqrt(var / snr);
            for (double& v : cur) v += sigma * rng->gaussian();
        }
        branches.currents.push_back(std::move(cur));
    }
}

namespace {

void check_equal_lengths(std::initializer_list<const std::vector<double>*> seqs) {
    const std::size_t n = (*seqs.begin())->size();
    for (const auto* s : seqs) {
        if (s->size() != n) {
            throw std::invalid_argument("reconstruct: photocurrent length mismatch");
        }
    }
}

}  // namespace

std::vector<double> reconstruct_missing_2x2(const std::vector<double>& i_x,
                                            const std::vector<double>& i_y,
                                            const std::vector<double>& i_sum) {
    check_equal_lengths({&i_x, &i_y, &i_sum});
    std::vector<double> out(i_x.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = 2.0 * i_x[n] + 2.0 * i_y[n] - i_sum[n];
    }
    return out;
}

std::vector<double> reconstruct_missing_hybrid(const std::vector<double>& i_sum,
                                               const std::vector<double>& i_diff,
                                               const std::vector<double>& i_pjy) {
    check_equal_lengths({&i_sum, &i_diff, &i_pjy});
    std::vector<double> out(i_sum.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = i_sum[n] + i_diff[n] - i_pjy[n];
    }
    return out;
}

std::array<std::vector<double>, 4> reconstruct_from_3x3(
    const std::vector<double>& i1, const std::vector<double>& i2,
    const std::vector<double>& i3) {
    check_equal_lengths({&i1, &i2, &i3});
    const double r3 = std::sqrt(3.0);
    std::array<std::vector<double>, 4> out;
    for (auto& v : out) v.resize(i1.size());
    for (std::size_t n = 0; n < i1.size(); ++n) {
        out[0][n] = 3.0 * i2[n];
        out[1][n] = 2.0 * i1[n] - i2[n] + 2.0 * i3[n];
        out[2][n] = (1.0 - r3) * i1[n] + i2[n] + (1.0 + r3) * i3[n];
        out[3][n] = (1.0 + r3) * i1[n] + i2[n] + (1.0 - r3) * i3[n];
    }
    return out;
}

}  // namespace jsfr
