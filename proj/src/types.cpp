// types.cpp - string conversions for shared labels

#include "qcorr/types.hpp"

#include <stdexcept>
#include <string>

namespace qcorr {

SubsystemPair subsystems(Partition p) {
    switch (p) {
        case Partition::s1s2: return {Subsystem::s1, Subsystem::s2};
        case Partition::r1r2: return {Subsystem::r1, Subsystem::r2};
        case Partition::s1r1: return {Subsystem::s1, Subsystem::r1};
        case Partition::s1r2: return {Subsystem::s1, Subsystem::r2};
        case Partition::s2r1: return {Subsystem::s2, Subsystem::r1};
        case Partition::s2r2: return {Subsystem::s2, Subsystem::r2};
    }
    throw std::logic_error("unknown partition");
}

std::string_view to_string(Partition p) {
    switch (p) {
        case Partition::s1s2: return "s1s2";
        case Partition::r1r2: return "r1r2";
        case Partition::s1r1: return "s1r1";
        case Partition::s1r2: return "s1r2";
        case Partition::s2r1: return "s2r1";
        case Partition::s2r2: return "s2r2";
    }
    throw std::logic_error("unknown partition");
}

Partition partition_from_string(std::string_view s) {
    for (Partition p : kAllPartitions) {
        if (to_string(p) == s) return p;
    }
    throw std::invalid_argument("unknown partition '" + std::string(s) + "'");
}

std::string_view to_string(Side s) { return s == Side::first ? "first" : "second"; }

Side side_from_string(std::string_view s) {
    if (s == "first") return Side::first;
    if (s == "second") return Side::second;
    throw std::invalid_argument("unknown side '" + std::string(s) + "' (expected first|second)");
}

std::string_view to_string(Family f) { return f == Family::two_exc ? "two_exc" : "one_exc"; }

Family family_from_string(std::string_view s) {
    if (s == "two_exc") return Family::two_exc;
    if (s == "one_exc") return Family::one_exc;
    throw std::invalid_argument("unknown family '" + std::string(s) + "' (expected two_exc|one_exc)");
}

std::string_view to_string(Pipeline p) {
    switch (p) {
        case Pipeline::closed_form: return "closed";
        case Pipeline::brute_force: return "brute";
        case Pipeline::both: return "both";
    }
    throw std::logic_error("unknown pipeline");
}

Pipeline pipeline_from_string(std::string_view s) {
    if (s == "closed") return Pipeline::closed_form;
    if (s == "brute") return Pipeline::brute_force;
    if (s == "both") return Pipeline::both;
    throw std::invalid_argument("unknown pipeline '" + std::string(s) + "' (expected closed|brute|both)");
}

std::string_view to_string(RecordSource s) { return s == RecordSource::closed ? "closed" : "brute"; }

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::quantum: return "Q";
        case Measure::classical: return "C";
        case Measure::concurrence: return "concurrence";
    }
    throw std::logic_error("unknown measure");
}

}  // namespace qcorr
