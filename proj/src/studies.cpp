#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "adkit/doa.hpp"
#include "adkit/estimators.hpp"
#include "adkit/experiments.hpp"
#include "adkit/graphsym.hpp"
#include "adkit/metrics.hpp"
#include "adkit/noisechar.hpp"
#include "adkit/parallel.hpp"

namespace adkit {

namespace {

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    const double mu = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return v.size() > 1 ? s / static_cast<double>(v.size() - 1) : 0.0;
}

// Stream offset that keeps auxiliary draws disjoint from per-trial streams.
constexpr std::uint64_t kAuxStream = 1ULL << 40;

}  // namespace

OrderingStudy ordering_study(int m, double angle_deg, double snr_db, const std::vector<int>& ns, int trials,
                             std::uint64_t seed, Exec exec) {
    if (ns.empty() || trials < 1) throw DomainError("ordering_study: need n values and trials >= 1");
    OrderingStudy out;
    out.ns = ns;
    out.variants = {OrderingVariant::Random, OrderingVariant::SJT, OrderingVariant::Lehmer, OrderingVariant::Heap};
    const int nmax = *std::max_element(ns.begin(), ns.end());
    const std::size_t nv = out.variants.size();
    std::vector<std::vector<double>> per(trials, std::vector<double>(ns.size() * nv));
    parallel_for(trials, exec, [&](std::ptrdiff_t t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const Observation x = ula_snapshot({m, 0.5, {angle_deg}, snr_db}, rng);
        const std::uint64_t oseed = rng.engine()();
        for (std::size_t v = 0; v < nv; ++v) {
            OrderingIterator it({out.variants[v], oseed, std::nullopt}, m);
            cmat acc = cmat::Zero(m, m);
            int done = 0;
            for (std::size_t ni = 0; ni < ns.size(); ++ni) {
                while (done < ns[ni]) {
                    const cvec y = it.next().apply(x);
                    acc.noalias() += y * y.adjoint();
                    ++done;
                }
                per[t][ni * nv + v] = eig_snr(CovEstimate(acc / static_cast<double>(done)), 1).db;
            }
        }
        (void)nmax;
    });
    out.mean_db.assign(ns.size(), std::vector<double>(nv, 0.0));
    for (const auto& row : per)
        for (std::size_t ni = 0; ni < ns.size(); ++ni)
            for (std::size_t v = 0; v < nv; ++v) out.mean_db[ni][v] += row[ni * nv + v] / trials;
    return out;
}

std::vector<double> pase_study(int m, double angle_deg, double snr_db, const std::vector<int>& ns, int trials,
                               std::uint64_t seed, Exec exec) {
    if (ns.empty() || trials < 1) throw DomainError("pase_study: need n values and trials >= 1");
    const GroupRep zm = build_group(GroupKind::Cyclic, m);
    std::vector<std::vector<double>> per(trials, std::vector<double>(ns.size()));
    parallel_for(trials, exec, [&](std::ptrdiff_t t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const Observation x = ula_snapshot({m, 0.5, {angle_deg}, snr_db}, rng);
        const std::uint64_t oseed = rng.engine()();
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const CovEstimate est =
                pase(x, zm, static_cast<std::size_t>(ns[i]), {OrderingVariant::Random, oseed, std::nullopt});
            per[t][i] = eig_snr(est, 1).db;
        }
    });
    std::vector<double> mean(ns.size(), 0.0);
    for (const auto& row : per)
        for (std::size_t i = 0; i < ns.size(); ++i) mean[i] += row[i] / trials;
    return mean;
}

TwoSignalResult music_two_signal(int m, const std::vector<double>& angles, double snr_db, std::uint64_t seed) {
    Rng rng(seed, 0);
    const Observation x = ula_snapshot({m, 0.5, angles, snr_db}, rng);
    const int k = static_cast<int>(angles.size());
    TwoSignalResult r;
    const GroupRep zm = build_group(GroupKind::Cyclic, m);
    const CovEstimate fcg = group_averaged(x, zm);
    const CovEstimate fcov(x * x.adjoint());
    r.cg_eigenvalues.assign(fcg.eigenvalues.data(), fcg.eigenvalues.data() + m);
    r.cov_eigenvalues.assign(fcov.eigenvalues.data(), fcov.eigenvalues.data() + m);
    r.cg_peaks = music_from_estimate(fcg, k, {}, 0.5, 1.0, Exec::Serial).peaks;
    const Pseudospectrum cov = music_from_estimate(fcov, k, {}, 0.5, 1.0, Exec::Serial);
    r.cov_peaks = cov.peaks;
    r.cov_significant_peaks = static_cast<int>(significant_peaks(cov, 1e-3).size());
    return r;
}

BiasVariance music_bias_variance(int m, double angle_deg, double noise_power, int trials, std::uint64_t seed,
                                 Exec exec) {
    const GroupRep zm = build_group(GroupKind::Cyclic, m);
    const double snr_db = -10.0 * std::log10(noise_power);
    std::vector<double> cg(trials), cov(trials);
    parallel_for(trials, exec, [&](std::ptrdiff_t t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const Observation x = ula_snapshot({m, 0.5, {angle_deg}, snr_db}, rng);
        const auto pc = music_from_estimate(group_averaged(x, zm), 1, {}, 0.5, 1.0, Exec::Serial);
        const auto pv = music_from_estimate(CovEstimate(x * x.adjoint()), 1, {}, 0.5, 1.0, Exec::Serial);
        cg[t] = pc.peaks.empty() ? std::nan("") : pc.peaks.front().angle;
        cov[t] = pv.peaks.empty() ? std::nan("") : pv.peaks.front().angle;
    });
    BiasVariance b;
    b.cg_bias = std::abs(mean_of(cg) - angle_deg);
    b.cov_bias = std::abs(mean_of(cov) - angle_deg);
    b.cg_std = std::sqrt(sample_variance(cg));
    b.cov_std = std::sqrt(sample_variance(cov));
    return b;
}

ChirpConcentration chirp_concentration(int m, double mu, double snr_db, int trials, std::uint64_t seed, Exec exec) {
    std::vector<double> pa(trials), pc(trials), ratio(trials), err2(trials);
    parallel_for(trials, exec, [&](std::ptrdiff_t t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        WaveformSpec spec;
        spec.cls = WaveformClass::Chirp;
        spec.m = m;
        spec.mu = mu;
        spec.snr_db = snr_db;
        const Observation x = waveform(spec, rng);
        const ChirpRateEstimate est = estimate_chirp_rate(x);
        pa[t] = est.psi_star;
        pc[t] = cyclic_psi(x);
        ratio[t] = pa[t] / pc[t];
        err2[t] = (est.mu_hat - mu) * (est.mu_hat - mu);
    });
    ChirpConcentration c;
    c.psi_adapted = mean_of(pa);
    c.psi_cyclic = mean_of(pc);
    c.ratio = mean_of(ratio);
    c.mu_rmse = std::sqrt(mean_of(err2));
    return c;
}

namespace {

WaveformDecision expected_decision(WaveformClass c) {
    switch (c) {
        case WaveformClass::Tone: return WaveformDecision::Tone;
        case WaveformClass::Chirp: return WaveformDecision::Chirp;
        case WaveformClass::TwoTone: return WaveformDecision::MultiTone;
        case WaveformClass::NoiseLike: return WaveformDecision::NoiseLike;
    }
    return WaveformDecision::NoiseLike;
}

}  // namespace

double class_accuracy(WaveformClass cls, double snr_db, int trials, std::uint64_t seed, const ClassifierOptions& opts,
                      Exec exec) {
    std::vector<char> ok(trials, 0);
    parallel_for(trials, exec, [&](std::ptrdiff_t t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        WaveformSpec spec;
        spec.cls = cls;
        spec.mu = cls == WaveformClass::Chirp ? 0.5 : 0.0;
        spec.snr_db = snr_db;
        ok[t] = classify_waveform(waveform(spec, rng), opts).value == expected_decision(cls) ? 1 : 0;
    });
    return static_cast<double>(std::count(ok.begin(), ok.end(), 1)) / trials;
}

WaveformDecision fft_classify(const Observation& x) {
    const rvec p = cyclic_spectrum(x);  // descending
    const double tot = p.sum();
    const int m = static_cast<int>(p.size());
    double logsum = 0.0;
    for (int k = 0; k < m; ++k) logsum += std::log(std::max(p[k], 1e-300));
    const double flatness = std::exp(logsum / m) / (tot / m);
    const double top = p[0] / tot;
    const double top2 = (p[0] + p[1]) / tot;
    int peaks = 0;
    while (peaks < m && p[peaks] >= 0.5 * p[0]) ++peaks;
    if (flatness > 0.5) return WaveformDecision::NoiseLike;
    if (top > 0.6 && peaks == 1) return WaveformDecision::Tone;
    if (peaks == 2 && top2 > 0.6) return WaveformDecision::MultiTone;
    return WaveformDecision::NoiseLike;
}

namespace {

struct AgilePulse {
    WaveformSpec spec;
    WaveformDecision truth;
};

AgilePulse draw_agile_pulse(int m, double snr_db, Rng& rng) {
    AgilePulse p;
    p.spec.m = m;
    p.spec.snr_db = snr_db;
    const double u = rng.uniform();
    p.spec.f0 = rng.uniform() * m;
    if (u < 0.40) {
        p.spec.cls = WaveformClass::Chirp;
        p.spec.mu = -1.5 + 3.0 * rng.uniform();
    } else if (u < 0.65) {
        p.spec.cls = WaveformClass::Tone;
    } else if (u < 0.85) {
        p.spec.cls = WaveformClass::TwoTone;
        p.spec.f1 = std::fmod(p.spec.f0 + 5.0 + rng.uniform() * (m - 10.0), static_cast<double>(m));
    } else {
        p.spec.cls = WaveformClass::NoiseLike;
    }
    p.truth = expected_decision(p.spec.cls);
    return p;
}

}  // namespace

AgileStudy agile_source_study(int pulses, double snr_db, int sequences, std::uint64_t seed, Exec exec) {
    const int m = 31;
    std::vector<std::vector<char>> ad(sequences, std::vector<char>(pulses)), ff(sequences, std::vector<char>(pulses));
    parallel_for(static_cast<std::ptrdiff_t>(sequences) * pulses, exec, [&](std::ptrdiff_t idx) {
        const auto s = idx / pulses;
        const auto i = idx % pulses;
        Rng rng(seed, static_cast<std::uint64_t>(idx));
        const AgilePulse p = draw_agile_pulse(m, snr_db, rng);
        const Observation x = waveform(p.spec, rng);
        ad[s][i] = classify_waveform(x).value == p.truth ? 1 : 0;
        ff[s][i] = fft_classify(x) == p.truth ? 1 : 0;
    });
    AgileStudy st;
    st.cumulative_ad.assign(pulses, 0.0);
    st.cumulative_fft.assign(pulses, 0.0);
    double tot_ad = 0.0, tot_ff = 0.0;
    for (int s = 0; s < sequences; ++s) {
        int ca = 0, cf = 0;
        for (int i = 0; i < pulses; ++i) {
            ca += ad[s][i];
            cf += ff[s][i];
            st.cumulative_ad[i] += static_cast<double>(ca) / (i + 1) / sequences;
            st.cumulative_fft[i] += static_cast<double>(cf) / (i + 1) / sequences;
        }
        tot_ad += ca;
        tot_ff += cf;
    }
    st.overall_ad = tot_ad / (static_cast<double>(sequences) * pulses);
    st.overall_fft = tot_ff / (static_cast<double>(sequences) * pulses);
    return st;
}

std::vector<Permutation> c5_s3_elements() {
    std::vector<Permutation> out;
    std::vector<int> p{1, 2, 3};
    do {
        out.emplace_back(std::vector<int>{0, p[0], p[1], p[2], 4, 5});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

S3Advantage s3_advantage(const Graph& g, const std::vector<Permutation>& s3, const std::vector<double>& taps,
                         double snr_db, int trials, int conjugations, std::uint64_t seed, Exec exec) {
    const int n = g.n;
    const GroupRep gs3 = custom_group(s3, "S3");
    std::vector<cmat> us(conjugations);
    for (int c = 0; c < conjugations; ++c) {
        Rng rng(seed, kAuxStream + static_cast<std::uint64_t>(c));
        us[c] = haar_unitary(n, rng);
    }
    // Orthonormal basis of the two-dimensional irrep on the moved vertices.
    std::vector<int> moved;
    for (int i = 0; i < n; ++i)
        for (const auto& p : s3)
            if (p.map[i] != i) {
                moved.push_back(i);
                break;
            }
    cmat q = cmat::Zero(n, 2);
    if (moved.size() == 3) {
        q(moved[0], 0) = 1.0 / std::sqrt(2.0);
        q(moved[1], 0) = -1.0 / std::sqrt(2.0);
        q(moved[0], 1) = 1.0 / std::sqrt(6.0);
        q(moved[1], 1) = 1.0 / std::sqrt(6.0);
        q(moved[2], 1) = -2.0 / std::sqrt(6.0);
    }
    auto offdiag = [&](const cmat& f) {
        const cmat b = q.adjoint() * f * q;
        const cplx mid = b.trace() / 2.0;
        const double nb = b.norm();
        return nb > 0 ? (b - mid * cmat::Identity(2, 2)).norm() / nb : 0.0;
    };

    GraphSignalSpec spec;
    spec.graph = g;
    spec.filter_taps = taps;
    spec.snr_db = snr_db;
    std::vector<double> ps3(trials), schur(trials);
    std::vector<std::vector<double>> pcc(trials, std::vector<double>(conjugations));
    parallel_for(trials, exec, [&](std::ptrdiff_t t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const Observation x = graph_signal(spec, rng);
        const CovEstimate f = group_averaged(x, gs3);
        ps3[t] = spectral_concentration(f);
        schur[t] = offdiag(f.matrix);
        for (int c = 0; c < conjugations; ++c) pcc[t][c] = cyclic_psi(us[c] * x);
    });
    S3Advantage r;
    r.psi_s3 = mean_of(ps3);
    r.psi_best_conjugated = 0.0;
    for (int c = 0; c < conjugations; ++c) {
        double s = 0.0;
        for (int t = 0; t < trials; ++t) s += pcc[t][c];
        r.psi_best_conjugated = std::max(r.psi_best_conjugated, s / trials);
    }
    r.advantage = r.psi_s3 / r.psi_best_conjugated - 1.0;
    r.schur_offdiag = *std::max_element(schur.begin(), schur.end());
    const rmat h = graph_filter(g, taps);
    const cmat pop = (h * h.transpose()).cast<cplx>();
    r.population_block = (q.adjoint() * pop * q).trace().real() / 2.0 / pop.trace().real();
    return r;
}

double processing_gain_study(int m, double snr_db, int trials, std::uint64_t seed, Exec exec) {
    const GroupRep zm = build_group(GroupKind::Cyclic, m);
    std::vector<double> gain(trials);
    parallel_for(trials, exec, [&](std::ptrdiff_t t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const int bin = rng.uniform_int(0, m - 1);
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        cvec x(m);
        for (int n = 0; n < m; ++n) x[n] = std::polar(1.0, phase + 2.0 * std::numbers::pi * bin * n / m);
        x += rng.complex_normal_vector(m, noise_variance(snr_db));
        gain[t] = eig_snr(group_averaged(x, zm), 1).db - snr_db;
    });
    return mean_of(gain);
}

cvec gaat_data(int m, Rng& rng) {
    cvec x(m);
    for (int i = 0; i < m; ++i) x[i] = static_cast<double>(rng.uniform_int(-1000, 1000));
    return x;
}

namespace {

double sample_moment(const cvec& x, int k) {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) s += std::pow(x[i].real(), k);
    return s / static_cast<double>(x.size());
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double mx = mean_of(xs), my = mean_of(ys);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

}  // namespace

GaatSlopes gaat_slopes(const std::vector<int>& ms, int moments, int trials, std::uint64_t seed, Exec exec) {
    GaatSlopes out;
    out.ms = ms;
    out.variance.assign(moments, std::vector<double>(ms.size()));
    const auto nm = static_cast<std::uint64_t>(ms.size());
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
        std::vector<std::vector<double>> vals(moments, std::vector<double>(trials));
        parallel_for(trials, exec, [&](std::ptrdiff_t t) {
            Rng rng(seed, static_cast<std::uint64_t>(t) * nm + mi);
            const cvec x = gaat_data(ms[mi], rng);
            for (int k = 1; k <= moments; ++k) vals[k - 1][t] = sample_moment(x, k);
        });
        for (int k = 0; k < moments; ++k) out.variance[k][mi] = sample_variance(vals[k]);
    }
    std::vector<double> lx;
    for (int m : ms) lx.push_back(std::log(static_cast<double>(m)));
    for (int k = 0; k < moments; ++k) {
        std::vector<double> ly;
        for (double v : out.variance[k]) ly.push_back(std::log(v));
        out.slopes.push_back(fit_slope(lx, ly));
    }
    return out;
}

std::vector<GaatContinuumRow> gaat_continuum(const std::vector<std::pair<int, int>>& configs, int trials,
                                             std::uint64_t seed, Exec exec) {
    std::vector<GaatContinuumRow> rows;
    const auto nc = static_cast<std::uint64_t>(configs.size());
    for (std::size_t ci = 0; ci < configs.size(); ++ci) {
        const auto [d, l] = configs[ci];
        std::vector<double> m1(trials), m4(trials);
        parallel_for(trials, exec, [&](std::ptrdiff_t t) {
            Rng rng(seed, static_cast<std::uint64_t>(t) * nc + ci);
            double s1 = 0.0, s4 = 0.0;
            for (int obs = 0; obs < l; ++obs) {
                const cvec x = gaat_data(d, rng);
                s1 += sample_moment(x, 1);
                s4 += sample_moment(x, 4);
            }
            m1[t] = s1 / l;
            m4[t] = s4 / l;
        });
        const double budget = static_cast<double>(d) * l;
        rows.push_back({d, l, sample_variance(m1) * budget, sample_variance(m4) * budget});
    }
    return rows;
}

GaatGroupRatios gaat_group_ratios(int m, int a, int b, int moments, int trials, std::uint64_t seed, Exec exec) {
    const std::vector<GroupRep> groups{build_group(GroupKind::Cyclic, m), build_group(GroupKind::Dihedral, m),
                                       build_group(GroupKind::DirectProduct, m, {a, b})};
    // vals[group][moment][trial]; every group sees the same draw in a given trial.
    std::vector<std::vector<std::vector<double>>> vals(
        groups.size(), std::vector<std::vector<double>>(moments, std::vector<double>(trials)));
    parallel_for(trials, exec, [&](std::ptrdiff_t t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const cvec x = gaat_data(m, rng);
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            for (int k = 1; k <= moments; ++k) {
                double s = 0.0;
                for (std::size_t e = 0; e < groups[gi].order(); ++e) s += sample_moment(groups[gi].act(e, x), k);
                vals[gi][k - 1][t] = s / static_cast<double>(groups[gi].order());
            }
        }
    });
    GaatGroupRatios r;
    for (int k = 0; k < moments; ++k) {
        const double vz = sample_variance(vals[0][k]);
        r.z_over_d.push_back(vz / sample_variance(vals[1][k]));
        r.z_over_zz.push_back(vz / sample_variance(vals[2][k]));
    }
    return r;
}

std::vector<GroupRep> noise_catalog(int m) {
    std::vector<GroupRep> cat{build_group(GroupKind::Cyclic, m)};
    // Non-increasing factorizations of m into factors >= 2, excluding the single factor m.
    std::vector<std::vector<int>> facs;
    std::function<void(int, int, std::vector<int>&)> rec = [&](int rest, int maxf, std::vector<int>& cur) {
        if (rest == 1) {
            if (cur.size() > 1) facs.push_back(cur);
            return;
        }
        for (int f = std::min(rest, maxf); f >= 2; --f) {
            if (rest % f) continue;
            cur.push_back(f);
            rec(rest / f, f, cur);
            cur.pop_back();
        }
    };
    std::vector<int> cur;
    rec(m, m, cur);
    for (const auto& f : facs) cat.push_back(build_group(GroupKind::DirectProduct, m, f));
    return cat;
}

ColoredNoiseStudy colored_noise_study(double rho, int m, int draws, std::uint64_t seed) {
    ColoredNoiseStudy st;
    const auto cat = noise_catalog(m);
    const NoiseCharacterization nc = natural_group(ar1_cov(rho, m), cat);
    for (const auto& g : cat) st.groups.push_back(g.name);
    st.residuals = nc.residuals;
    st.natural = nc.natural_group;

    // Circulant noise with the wrapped AR(1) autocorrelation rho^{min(k, M-k)}.
    cmat qc(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int d = std::abs(i - j);
            qc(i, j) = std::pow(rho, std::min(d, m - d));
        }
    const GroupRep zm = build_group(GroupKind::Cyclic, m);
    const cmat t = group_transform(zm);
    const rvec q = (t * qc * t.adjoint()).diagonal().real();
    const cmat sq = psd_sqrt(qc);
    cmat s = cmat::Zero(m, m);
    for (int d = 0; d < draws; ++d) {
        Rng rng(seed, static_cast<std::uint64_t>(d));
        const cvec y = whiten_with(sq * rng.complex_normal_vector(m, 1.0), t, q);
        s.noalias() += y * y.adjoint();
    }
    st.whitened_alpha = coloring_index(s / static_cast<double>(draws));
    return st;
}

}  // namespace adkit
