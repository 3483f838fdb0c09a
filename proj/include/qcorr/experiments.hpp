// experiments.hpp - time sweeps over all partitions, asymptotic and
// sum-of-squares audits, and the built-in figure scenarios.

#pragma once

#include "qcorr/correlations.hpp"
#include "qcorr/model.hpp"
#include "qcorr/types.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qcorr {

struct CorrelationRecord {
    double time{0.0};  // gamma t or lambda t
    Partition partition{Partition::s1s2};
    RecordSource source{RecordSource::brute};
    double mutual_info{0.0};
    double classical{0.0};
    double quantum{0.0};
    double concurrence{0.0};
    Side measured_side{Side::second};

    double value(Measure m) const;
};

// Structured audit result. `margin` is the worst-case value of the audited
// quantity (its meaning is given per audit), so failures are diagnosable.
struct AuditOutcome {
    std::string name;
    bool passed{false};
    double margin{0.0};
    std::string detail;
};

struct SweepOptions {
    OptimizerSettings optimizer;
    Side side{Side::second};
    unsigned threads{0};  // 0: hardware concurrency
    double agreement_tol{1e-6};
};

struct SweepResult {
    Scenario scenario;
    std::vector<CorrelationRecord> records;  // ordered by (time, partition, source)
    std::vector<AuditOutcome> audits;
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled exactly once; the first exception is rethrown after joining.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Closed forms exist for s1s2 and r1r2 only (measurement on the second party).
bool closed_form_covers(Partition p);

/// Closed-form record at one time. Rejects uncovered partitions.
CorrelationRecord closed_form_record(const Scenario& scenario, Partition partition, double t);

/// Brute-force record from the reduced state at one time.
CorrelationRecord brute_force_record(const Scenario& scenario, Partition partition, double t,
                                     const SweepOptions& options);

/// Evaluates every (time, partition) pair of the scenario grid. With
/// Pipeline::both, an "closed_vs_brute" audit compares covered records.
SweepResult run_sweep(const Scenario& scenario, std::span<const Partition> partitions,
                      Pipeline pipeline, const SweepOptions& options = {});

struct AsymptoticSettings {
    double tail_start{8.0};
    double band_low{0.9};
    double band_high{1.1};
    double transfer_start{15.0};
    double transfer_tol{1e-3};
};

struct TailAudit {
    AuditOutcome outcome;
    std::vector<double> times;
    std::vector<double> values;  // ratios, or absolute differences for the transfer audit
    bool within_band{true};
};

/// Ratio of the closed-form spin-pair C to (b2 - b2^2) gt e^{-2 gt} / ln 2 on
/// the flat-spectrum tail. Passes iff |ratio - 1| is non-increasing along the
/// sampled tail; `within_band` and `margin` (max |ratio - 1|) are reported.
TailAudit check_asymptotic_flat_C(double beta2, std::span<const double> gamma_t,
                                  const AsymptoticSettings& settings = {});

/// two_exc: |Q(r1r2)(t) - Q(s1s2)(0)| < transfer_tol for every t >= transfer_start.
/// one_exc: Q(s1s2)(t) / (H(alpha2) e^{-gt}) inside the band for every tail t.
TailAudit check_asymptotic_reservoir(Family family, double alpha2, double beta2,
                                     std::span<const double> gamma_t,
                                     const AsymptoticSettings& settings = {});

struct SquareSumAudit {
    AuditOutcome outcome;
    std::vector<double> times;
    std::vector<double> totals;  // sum over s1s2, s1r2, s2r1, r1r2 of measure^2
    bool non_increasing{true};
    double worst_step_increase{0.0};
};

/// Passes iff total(t) <= total(t0) + 1e-9 on every grid time, where t0 is
/// the first grid time. Sample-to-sample monotonicity is reported separately.
SquareSumAudit sum_of_squares_audit(const SweepResult& result, Measure measure,
                                    RecordSource source = RecordSource::brute);

/// First time in [t_low, t_high] where the spin-pair Wootters concurrence
/// reaches zero, by bisection. Requires positive concurrence at t_low and
/// zero at t_high.
double locate_sudden_death(Family family, Complex alpha, Complex beta,
                           const SpectralDensity& spectral, double t_low, double t_high,
                           double tol = 1e-10);

/// First sign change of xi(t) on (0, t_max], scanned on `scan_steps` points
/// and polished by bisection. Returns a negative value if none is found.
double locate_first_amplitude_zero(const SpectralDensity& spectral, double t_max,
                                   int scan_steps = 4000);

int count_sign_changes(std::span<const double> values);
int count_local_maxima(std::span<const double> values, double tol = 1e-12);

// Built-in figure scenarios, each with a Bell overlay and an
// alpha = 1/sqrt(10), beta = 3/sqrt(10) overlay.
struct FigureOverlay {
    std::string label;
    Scenario scenario;
};

struct FigureSpec {
    std::string name;  // fig1 ... fig4
    std::string title;
    std::vector<FigureOverlay> overlays;
};

std::vector<FigureSpec> builtin_figures();

}  // namespace qcorr
