// config.cpp - JSON run configuration

#include "qcorr/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qcorr {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {
    "family",     "alpha_re", "alpha_im", "beta_re", "beta_im", "spectral",
    "time_start", "time_end", "time_steps", "partitions", "pipeline", "side",
    "grid",       "refine",   "threads",  "out_dir", "svg",     "audits"};
const std::set<std::string> kAuditKeys = {"agreement", "sum_of_squares", "asymptotics"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(prefix + key, "unknown key");
    }
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback, const std::string& field) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(field, "wrong type");
    }
}

template <typename T>
T require(const json& obj, const std::string& key, const std::string& field) {
    if (!obj.contains(key)) throw ConfigError(field, "missing required key");
    return get_or<T>(obj, key, T{}, field);
}

template <typename Fn>
auto parse_label(const std::string& field, const std::string& text, Fn fn) {
    try {
        return fn(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
    }
}

SpectralDensity parse_spectral(const json& obj) {
    if (!obj.is_object()) throw ConfigError("spectral", "must be an object");
    const std::string kind = require<std::string>(obj, "kind", "spectral.kind");
    SpectralDensity s;
    if (kind == "flat") {
        reject_unknown(obj, {"kind", "gamma"}, "spectral.");
        s.kind = SpectralKind::flat;
        s.gamma = require<double>(obj, "gamma", "spectral.gamma");
        if (!(s.gamma > 0.0)) throw ConfigError("spectral.gamma", "must be > 0");
    } else if (kind == "lorentz") {
        reject_unknown(obj, {"kind", "W", "lambda"}, "spectral.");
        s.kind = SpectralKind::lorentz;
        s.gamma = 0.0;
        s.coupling = require<double>(obj, "W", "spectral.W");
        s.width = require<double>(obj, "lambda", "spectral.lambda");
        if (!(s.coupling > 0.0)) throw ConfigError("spectral.W", "must be > 0");
        if (!(s.width > 0.0)) throw ConfigError("spectral.lambda", "must be > 0");
    } else {
        throw ConfigError("spectral.kind", "expected flat|lorentz, got '" + kind + "'");
    }
    return s;
}

}  // namespace

Scenario RunConfig::scenario() const {
    return Scenario{family, alpha, beta, spectral, uniform_grid(time_start, time_end, time_steps)};
}

SweepOptions RunConfig::sweep_options() const {
    SweepOptions opts;
    opts.optimizer = optimizer;
    opts.side = side;
    opts.threads = threads;
    return opts;
}

bool RunConfig::operator==(const RunConfig& o) const {
    return family == o.family && alpha == o.alpha && beta == o.beta && spectral == o.spectral &&
           time_start == o.time_start && time_end == o.time_end && time_steps == o.time_steps &&
           partitions == o.partitions && pipeline == o.pipeline && side == o.side &&
           optimizer.grid == o.optimizer.grid &&
           optimizer.refine_iters == o.optimizer.refine_iters && threads == o.threads &&
           out_dir == o.out_dir && svg == o.svg && audits == o.audits;
}

RunConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("document", e.what());
    }
    if (!doc.is_object()) throw ConfigError("document", "top level must be an object");
    reject_unknown(doc, kTopKeys, "");

    RunConfig cfg;
    cfg.family = parse_label("family", require<std::string>(doc, "family", "family"),
                             family_from_string);
    cfg.alpha = {require<double>(doc, "alpha_re", "alpha_re"),
                 get_or<double>(doc, "alpha_im", 0.0, "alpha_im")};
    cfg.beta = {require<double>(doc, "beta_re", "beta_re"),
                get_or<double>(doc, "beta_im", 0.0, "beta_im")};
    const double norm2 = std::norm(cfg.alpha) + std::norm(cfg.beta);
    const double norm = std::sqrt(norm2);
    if (!(std::abs(norm - 1.0) < 1e-6)) {
        std::ostringstream os;
        os << "|alpha|^2 + |beta|^2 = " << norm2 << "; must be 1 within 1e-6 in norm";
        throw ConfigError("alpha/beta", os.str());
    }
    if (std::abs(norm2 - 1.0) > 1e-14) {
        cfg.alpha /= norm;
        cfg.beta /= norm;
    }

    if (!doc.contains("spectral")) throw ConfigError("spectral", "missing required key");
    cfg.spectral = parse_spectral(doc.at("spectral"));

    cfg.time_start = get_or<double>(doc, "time_start", cfg.time_start, "time_start");
    cfg.time_end = get_or<double>(doc, "time_end", cfg.time_end, "time_end");
    cfg.time_steps = get_or<int>(doc, "time_steps", cfg.time_steps, "time_steps");
    if (cfg.time_start < 0.0) throw ConfigError("time_start", "must be >= 0");
    if (!(cfg.time_end > cfg.time_start)) throw ConfigError("time_end", "must exceed time_start");
    if (cfg.time_steps < 2) throw ConfigError("time_steps", "must be >= 2");

    if (doc.contains("partitions")) {
        const auto names = get_or<std::vector<std::string>>(doc, "partitions", {}, "partitions");
        if (names.empty()) throw ConfigError("partitions", "must not be empty");
        cfg.partitions.clear();
        for (const auto& n : names) {
            cfg.partitions.push_back(parse_label("partitions", n, partition_from_string));
        }
    }
    if (doc.contains("pipeline")) {
        cfg.pipeline = parse_label("pipeline", get_or<std::string>(doc, "pipeline", "", "pipeline"),
                                   pipeline_from_string);
    }
    if (doc.contains("side")) {
        cfg.side = parse_label("side", get_or<std::string>(doc, "side", "", "side"), side_from_string);
    }
    cfg.optimizer.grid = get_or<int>(doc, "grid", cfg.optimizer.grid, "grid");
    cfg.optimizer.refine_iters = get_or<int>(doc, "refine", cfg.optimizer.refine_iters, "refine");
    if (cfg.optimizer.grid < 2) throw ConfigError("grid", "must be >= 2");
    if (cfg.optimizer.refine_iters < 0) throw ConfigError("refine", "must be >= 0");
    const int threads = get_or<int>(doc, "threads", 0, "threads");
    if (threads < 0) throw ConfigError("threads", "must be >= 0");
    cfg.threads = static_cast<unsigned>(threads);
    cfg.out_dir = get_or<std::string>(doc, "out_dir", cfg.out_dir, "out_dir");
    cfg.svg = get_or<bool>(doc, "svg", cfg.svg, "svg");

    if (doc.contains("audits")) {
        const json& a = doc.at("audits");
        if (!a.is_object()) throw ConfigError("audits", "must be an object");
        reject_unknown(a, kAuditKeys, "audits.");
        cfg.audits.agreement = get_or<bool>(a, "agreement", true, "audits.agreement");
        cfg.audits.sum_of_squares = get_or<bool>(a, "sum_of_squares", true, "audits.sum_of_squares");
        cfg.audits.asymptotics = get_or<bool>(a, "asymptotics", true, "audits.asymptotics");
    }
    if (cfg.pipeline != Pipeline::brute_force && cfg.side != Side::second) {
        throw ConfigError("side", "closed forms require side = second");
    }
    if (cfg.pipeline == Pipeline::closed_form) {
        for (Partition p : cfg.partitions) {
            if (!closed_form_covers(p)) {
                throw ConfigError("partitions", "closed pipeline has no closed form for " +
                                                    std::string(to_string(p)));
            }
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("path", "cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& c) {
    json spectral;
    if (c.spectral.kind == SpectralKind::flat) {
        spectral = {{"kind", "flat"}, {"gamma", c.spectral.gamma}};
    } else {
        spectral = {{"kind", "lorentz"}, {"W", c.spectral.coupling}, {"lambda", c.spectral.width}};
    }
    std::vector<std::string> parts;
    for (Partition p : c.partitions) parts.emplace_back(to_string(p));
    const json doc = {
        {"family", std::string(to_string(c.family))},
        {"alpha_re", c.alpha.real()},
        {"alpha_im", c.alpha.imag()},
        {"beta_re", c.beta.real()},
        {"beta_im", c.beta.imag()},
        {"spectral", spectral},
        {"time_start", c.time_start},
        {"time_end", c.time_end},
        {"time_steps", c.time_steps},
        {"partitions", parts},
        {"pipeline", std::string(to_string(c.pipeline))},
        {"side", std::string(to_string(c.side))},
        {"grid", c.optimizer.grid},
        {"refine", c.optimizer.refine_iters},
        {"threads", c.threads},
        {"out_dir", c.out_dir},
        {"svg", c.svg},
        {"audits",
         {{"agreement", c.audits.agreement},
          {"sum_of_squares", c.audits.sum_of_squares},
          {"asymptotics", c.audits.asymptotics}}},
    };
    return doc.dump(2) + "\n";
}

}  // namespace qcorr
