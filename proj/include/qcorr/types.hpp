// types.hpp - labels shared across modules

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace qcorr {

enum class Subsystem : std::size_t { s1 = 0, s2 = 1, r1 = 2, r2 = 3 };

// Canonical order is also the CSV row order within a time step.
enum class Partition { s1s2, r1r2, s1r1, s1r2, s2r1, s2r2 };

inline constexpr std::array<Partition, 6> kAllPartitions = {
    Partition::s1s2, Partition::r1r2, Partition::s1r1,
    Partition::s1r2, Partition::s2r1, Partition::s2r2};

// The four pairs entering the sum-of-squares audits: the interacting pairs
// s1r1 and s2r2 are excluded.
inline constexpr std::array<Partition, 4> kSquareSumPartitions = {
    Partition::s1s2, Partition::s1r2, Partition::s2r1, Partition::r1r2};

struct SubsystemPair {
    Subsystem first;
    Subsystem second;
};

SubsystemPair subsystems(Partition p);
std::string_view to_string(Partition p);
Partition partition_from_string(std::string_view s);

// Which party of a bipartite state the measurement acts on.
enum class Side { first, second };
std::string_view to_string(Side s);
Side side_from_string(std::string_view s);

enum class Family { two_exc, one_exc };
std::string_view to_string(Family f);
Family family_from_string(std::string_view s);

// Pipeline requested for a sweep.
enum class Pipeline { closed_form, brute_force, both };
std::string_view to_string(Pipeline p);
Pipeline pipeline_from_string(std::string_view s);

// Pipeline that produced an individual record.
enum class RecordSource { closed, brute };
std::string_view to_string(RecordSource s);

enum class Measure { quantum, classical, concurrence };
std::string_view to_string(Measure m);

}  // namespace qcorr
