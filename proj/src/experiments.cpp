// experiments.cpp - sweeps and audits

#include "qcorr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qcorr {

double CorrelationRecord::value(Measure m) const {
    switch (m) {
        case Measure::quantum: return quantum;
        case Measure::classical: return classical;
        case Measure::concurrence: return concurrence;
    }
    throw std::logic_error("unknown measure");
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    workers.clear();
    if (failure) std::rethrow_exception(failure);
}

bool closed_form_covers(Partition p) { return p == Partition::s1s2 || p == Partition::r1r2; }

CorrelationRecord closed_form_record(const Scenario& scenario, Partition partition, double t) {
    if (!closed_form_covers(partition)) {
        throw std::invalid_argument("no closed form for partition " +
                                    std::string(to_string(partition)));
    }
    const Amplitudes amps = amplitudes(scenario.spectral, t);
    const double xi2 = amps.xi * amps.xi;
    const double chi2 = amps.chi * amps.chi;
    const double alpha2 = std::norm(scenario.alpha);
    const double beta2 = std::norm(scenario.beta);

    CorrelationRecord rec;
    rec.time = t;
    rec.partition = partition;
    rec.source = RecordSource::closed;
    rec.measured_side = Side::second;
    const bool spins = partition == Partition::s1s2;
    if (scenario.family == Family::two_exc) {
        if (spins) {
            rec.classical = classical_correlation_closed_two_exc(beta2, xi2, chi2);
            rec.quantum = quantum_correlation_closed_two_exc(beta2, xi2, chi2);
        } else {
            const CorrelationPair cq = correlations_closed_reservoir_two_exc(beta2, xi2, chi2);
            rec.classical = cq.classical;
            rec.quantum = cq.quantum;
        }
    } else {
        if (spins) {
            rec.classical = classical_correlation_closed_two_exc(beta2, xi2, chi2);
            rec.quantum = quantum_correlation_closed_one_exc(alpha2, xi2, chi2);
        } else {
            const CorrelationPair cq = correlations_closed_reservoir_one_exc(alpha2, xi2, chi2);
            rec.classical = cq.classical;
            rec.quantum = cq.quantum;
        }
    }
    rec.mutual_info = rec.classical + rec.quantum;
    // The reservoir pair is the spin pair with the roles of xi and chi swapped.
    rec.concurrence = spins ? concurrence_closed(scenario.family, scenario.alpha, scenario.beta,
                                                 amps.xi, amps.chi)
                            : concurrence_closed(scenario.family, scenario.alpha, scenario.beta,
                                                 amps.chi, amps.xi);
    return rec;
}

CorrelationRecord brute_force_record(const Scenario& scenario, Partition partition, double t,
                                     const SweepOptions& options) {
    const PureState4 state = build_state(scenario, amplitudes(scenario.spectral, t));
    const ComplexMatrix rho = reduced(state, partition);
    CorrelationRecord rec;
    rec.time = t;
    rec.partition = partition;
    rec.source = RecordSource::brute;
    rec.measured_side = options.side;
    rec.mutual_info = mutual_information(rho);
    rec.classical = classical_correlation_bruteforce(rho, options.side, options.optimizer).value;
    rec.quantum = rec.mutual_info - rec.classical;
    if (rec.quantum < 0.0 && rec.quantum >= -1e-8) rec.quantum = 0.0;
    rec.concurrence = concurrence_wootters(rho);
    return rec;
}

SweepResult run_sweep(const Scenario& scenario, std::span<const Partition> partitions,
                      Pipeline pipeline, const SweepOptions& options) {
    scenario.validate();
    std::vector<Partition> parts(partitions.begin(), partitions.end());
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    if (parts.empty()) throw std::invalid_argument("no partitions requested");

    const bool want_closed = pipeline != Pipeline::brute_force;
    const bool want_brute = pipeline != Pipeline::closed_form;
    if (want_closed && options.side != Side::second) {
        throw std::invalid_argument("closed forms assume measurement on the second party");
    }
    if (pipeline == Pipeline::closed_form) {
        for (Partition p : parts) {
            if (!closed_form_covers(p)) {
                throw std::invalid_argument("closed_form pipeline does not cover partition " +
                                            std::string(to_string(p)));
            }
        }
    }

    const std::size_t steps = scenario.time_grid.size();
    std::vector<std::vector<CorrelationRecord>> per_time(steps);
    parallel_for(steps, options.threads, [&](std::size_t i) {
        const double t = scenario.time_grid[i];
        auto& out = per_time[i];
        for (Partition p : parts) {
            if (want_closed && closed_form_covers(p)) out.push_back(closed_form_record(scenario, p, t));
            if (want_brute) out.push_back(brute_force_record(scenario, p, t, options));
        }
    });

    SweepResult result;
    result.scenario = scenario;
    for (auto& block : per_time) {
        result.records.insert(result.records.end(), block.begin(), block.end());
    }

    if (pipeline == Pipeline::both) {
        double worst = 0.0;
        std::string where = "none";
        for (std::size_t k = 0; k + 1 < result.records.size(); ++k) {
            const auto& a = result.records[k];
            const auto& b = result.records[k + 1];
            if (a.source != RecordSource::closed || b.source != RecordSource::brute ||
                a.partition != b.partition || a.time != b.time) {
                continue;
            }
            const double diff = std::max({std::abs(a.classical - b.classical),
                                          std::abs(a.quantum - b.quantum),
                                          std::abs(a.mutual_info - b.mutual_info),
                                          std::abs(a.concurrence - b.concurrence)});
            if (diff > worst) {
                worst = diff;
                std::ostringstream os;
                os << to_string(a.partition) << " at t=" << a.time;
                where = os.str();
            }
        }
        std::ostringstream detail;
        detail << "max |closed - brute| = " << worst << " (" << where << "), tol "
               << options.agreement_tol;
        result.audits.push_back({"closed_vs_brute", worst <= options.agreement_tol, worst,
                                 detail.str()});
    }
    return result;
}

namespace {

std::vector<double> sorted_times(std::span<const double> times, double minimum, const char* what) {
    if (times.empty()) throw std::invalid_argument(std::string(what) + ": no sample times");
    std::vector<double> out(times.begin(), times.end());
    std::sort(out.begin(), out.end());
    if (out.front() < minimum) {
        std::ostringstream os;
        os << what << ": sample time " << out.front() << " below tail start " << minimum;
        throw std::invalid_argument(os.str());
    }
    return out;
}

// num / den with 0/0 read as 1 (both sides vanish identically).
double safe_ratio(double num, double den) {
    if (den == 0.0) return std::abs(num) < 1e-12 ? 1.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

std::string describe(const std::vector<double>& times, const std::vector<double>& values,
                     const char* label) {
    std::ostringstream os;
    os.precision(6);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i) os << ", ";
        os << label << "(" << times[i] << ")=" << values[i];
    }
    return os.str();
}

}  // namespace

TailAudit check_asymptotic_flat_C(double beta2, std::span<const double> gamma_t,
                                  const AsymptoticSettings& settings) {
    TailAudit audit;
    audit.times = sorted_times(gamma_t, settings.tail_start, "check_asymptotic_flat_C");
    for (double t : audit.times) {
        const Amplitudes amps = amplitudes_flat(t);
        const double c = classical_correlation_closed_two_exc(beta2, amps.xi * amps.xi,
                                                              amps.chi * amps.chi);
        const double leading = (beta2 - beta2 * beta2) * t * std::exp(-2.0 * t) / std::numbers::ln2;
        audit.values.push_back(safe_ratio(c, leading));
    }
    bool monotone = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < audit.values.size(); ++i) {
        const double r = audit.values[i];
        const double gap = std::abs(r - 1.0);
        if (!std::isfinite(r)) monotone = false;
        if (r < settings.band_low || r > settings.band_high) audit.within_band = false;
        if (i > 0 && gap > std::abs(audit.values[i - 1] - 1.0)) monotone = false;
        worst = std::max(worst, gap);
    }
    std::ostringstream detail;
    detail << describe(audit.times, audit.values, "ratio")
           << (audit.within_band ? "; inside" : "; outside") << " band [" << settings.band_low
           << ", " << settings.band_high << "]";
    audit.outcome = {"asymptotic_flat_C", monotone, worst, detail.str()};
    return audit;
}

TailAudit check_asymptotic_reservoir(Family family, double alpha2, double beta2,
                                     std::span<const double> gamma_t,
                                     const AsymptoticSettings& settings) {
    if (std::abs(alpha2 + beta2 - 1.0) > 1e-10) {
        throw std::invalid_argument("check_asymptotic_reservoir: alpha2 + beta2 must equal 1");
    }
    TailAudit audit;
    bool passed = true;
    double worst = 0.0;
    if (family == Family::two_exc) {
        audit.times = sorted_times(gamma_t, settings.transfer_start, "check_asymptotic_reservoir");
        const double initial = quantum_correlation_closed_two_exc(beta2, 1.0, 0.0);
        for (double t : audit.times) {
            const Amplitudes amps = amplitudes_flat(t);
            const double q = correlations_closed_reservoir_two_exc(beta2, amps.xi * amps.xi,
                                                                   amps.chi * amps.chi).quantum;
            const double diff = std::abs(q - initial);
            audit.values.push_back(diff);
            worst = std::max(worst, diff);
            if (!(diff < settings.transfer_tol)) passed = false;
        }
        std::ostringstream detail;
        detail << describe(audit.times, audit.values, "|Q_r1r2 - Q_s1s2(0)|") << "; tol "
               << settings.transfer_tol;
        audit.outcome = {"asymptotic_reservoir_transfer", passed, worst, detail.str()};
        return audit;
    }

    audit.times = sorted_times(gamma_t, settings.tail_start, "check_asymptotic_reservoir");
    const double initial = shannon_binary(alpha2);
    for (double t : audit.times) {
        const Amplitudes amps = amplitudes_flat(t);
        const double q = quantum_correlation_closed_one_exc(alpha2, amps.xi * amps.xi,
                                                            amps.chi * amps.chi);
        const double r = safe_ratio(q, initial * std::exp(-t));
        audit.values.push_back(r);
        worst = std::max(worst, std::abs(r - 1.0));
        if (!(r >= settings.band_low && r <= settings.band_high)) passed = false;
    }
    audit.within_band = passed;
    std::ostringstream detail;
    detail << describe(audit.times, audit.values, "ratio") << "; band [" << settings.band_low
           << ", " << settings.band_high << "]";
    audit.outcome = {"asymptotic_spin_Q_one_exc", passed, worst, detail.str()};
    return audit;
}

SquareSumAudit sum_of_squares_audit(const SweepResult& result, Measure measure,
                                    RecordSource source) {
    std::map<double, std::array<int, 4>> seen;
    std::map<double, double> totals;
    for (const auto& rec : result.records) {
        if (rec.source != source) continue;
        const auto it = std::find(kSquareSumPartitions.begin(), kSquareSumPartitions.end(),
                                  rec.partition);
        if (it == kSquareSumPartitions.end()) continue;
        const double v = rec.value(measure);
        seen[rec.time][static_cast<std::size_t>(it - kSquareSumPartitions.begin())]++;
        totals[rec.time] += v * v;
    }
    if (totals.empty()) throw std::invalid_argument("sum_of_squares_audit: no matching records");
    for (const auto& [t, counts] : seen) {
        for (int c : counts) {
            if (c != 1) {
                throw std::invalid_argument(
                    "sum_of_squares_audit: need exactly one record for each of s1s2, s1r2, "
                    "s2r1, r1r2 at every time");
            }
        }
    }

    SquareSumAudit audit;
    for (const auto& [t, v] : totals) {
        audit.times.push_back(t);
        audit.totals.push_back(v);
    }
    const double initial = audit.totals.front();
    double worst_excess = -std::numeric_limits<double>::infinity();
    bool passed = true;
    for (std::size_t i = 0; i < audit.totals.size(); ++i) {
        const double excess = audit.totals[i] - initial;
        worst_excess = std::max(worst_excess, excess);
        if (excess > 1e-9) passed = false;
        if (i > 0) {
            const double step = audit.totals[i] - audit.totals[i - 1];
            audit.worst_step_increase = std::max(audit.worst_step_increase, step);
            if (step > 1e-12) audit.non_increasing = false;
        }
    }
    std::ostringstream detail;
    detail << "initial " << initial << ", max excess over initial " << worst_excess
           << ", largest step increase " << audit.worst_step_increase
           << (audit.non_increasing ? " (non-increasing)" : " (not monotone)");
    audit.outcome = {"sum_of_squares_" + std::string(to_string(measure)), passed, worst_excess,
                     detail.str()};
    return audit;
}

double locate_sudden_death(Family family, Complex alpha, Complex beta,
                           const SpectralDensity& spectral, double t_low, double t_high,
                           double tol) {
    constexpr double kZero = 1e-12;
    auto conc = [&](double t) {
        const PureState4 state = build_state(family, alpha, beta, amplitudes(spectral, t));
        return concurrence_wootters(reduced(state, Partition::s1s2));
    };
    if (!(conc(t_low) > kZero)) throw std::invalid_argument("concurrence already zero at t_low");
    if (conc(t_high) > kZero) throw std::invalid_argument("concurrence still positive at t_high");
    double lo = t_low;
    double hi = t_high;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (conc(mid) > kZero ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double locate_first_amplitude_zero(const SpectralDensity& spectral, double t_max, int scan_steps) {
    const std::vector<double> grid = uniform_grid(0.0, t_max, scan_steps);
    double prev_t = grid.front();
    double prev = amplitudes(spectral, prev_t).xi;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = amplitudes(spectral, grid[i]).xi;
        if ((prev > 0.0) != (cur > 0.0)) {
            double lo = prev_t;
            double hi = grid[i];
            const bool lo_positive = prev > 0.0;
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                ((amplitudes(spectral, mid).xi > 0.0) == lo_positive ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = cur;
        prev_t = grid[i];
    }
    return -1.0;
}

int count_sign_changes(std::span<const double> values) {
    // Exact zeros are skipped, so -1, 0, 2 counts as one crossing.
    int changes = 0;
    int last = 0;
    for (double v : values) {
        const int sign = (v > 0.0) - (v < 0.0);
        if (sign == 0) continue;
        if (last != 0 && sign != last) ++changes;
        last = sign;
    }
    return changes;
}

int count_local_maxima(std::span<const double> values, double tol) {
    int peaks = 0;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (values[i] > values[i - 1] + tol && values[i] > values[i + 1] + tol) ++peaks;
    }
    return peaks;
}

std::vector<FigureSpec> builtin_figures() {
    const Complex bell = 1.0 / std::sqrt(2.0);
    const Complex a10 = 1.0 / std::sqrt(10.0);
    const Complex b10 = 3.0 / std::sqrt(10.0);
    const SpectralDensity flat = SpectralDensity::flat(1.0);
    const SpectralDensity lorentz = SpectralDensity::lorentz(std::sqrt(200.0), 1.0);
    const std::vector<double> flat_grid = uniform_grid(0.0, 6.0, 61);
    const std::vector<double> lorentz_grid = uniform_grid(0.0, 2.0, 101);

    auto overlays = [&](Family family, const SpectralDensity& spectral,
                        const std::vector<double>& grid) {
        return std::vector<FigureOverlay>{
            {"bell", Scenario{family, bell, bell, spectral, grid}},
            {"asym", Scenario{family, a10, b10, spectral, grid}},
        };
    };
    return {
        {"fig1", "two excitations, flat spectrum", overlays(Family::two_exc, flat, flat_grid)},
        {"fig2", "two excitations, Lorentz W/lambda = sqrt(200)",
         overlays(Family::two_exc, lorentz, lorentz_grid)},
        {"fig3", "one excitation, flat spectrum", overlays(Family::one_exc, flat, flat_grid)},
        {"fig4", "one excitation, Lorentz W/lambda = sqrt(200)",
         overlays(Family::one_exc, lorentz, lorentz_grid)},
    };
}

}  // namespace qcorr
