// config.hpp - JSON run configuration

#pragma once

#include "qcorr/experiments.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcorr {

// Raised for malformed or invalid configuration; `field()` names the
// offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct AuditToggles {
    bool agreement{true};
    bool sum_of_squares{true};
    bool asymptotics{true};

    bool operator==(const AuditToggles&) const = default;
};

struct RunConfig {
    Family family{Family::two_exc};
    Complex alpha{1.0};
    Complex beta{0.0};
    SpectralDensity spectral;
    double time_start{0.0};
    double time_end{5.0};
    int time_steps{51};
    std::vector<Partition> partitions{kAllPartitions.begin(), kAllPartitions.end()};
    Pipeline pipeline{Pipeline::both};
    Side side{Side::second};
    OptimizerSettings optimizer;
    unsigned threads{0};
    std::string out_dir{"."};
    bool svg{false};
    AuditToggles audits;

    Scenario scenario() const;
    SweepOptions sweep_options() const;

    bool operator==(const RunConfig& other) const;
};

/// Parses and validates a JSON document. Unknown keys are rejected.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

}  // namespace qcorr
