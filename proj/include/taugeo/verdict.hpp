#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace taugeo {

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

/// Outcome of a law check; failures carry a rendered witness.
struct Verdict {
    Status status = Status::Pass;
    std::string witness;
    std::size_t cases = 0;

    bool passed() const { return status == Status::Pass; }
    bool failed() const { return status == Status::Fail; }

    static Verdict pass(std::size_t cases) { return {Status::Pass, {}, cases}; }
    static Verdict fail(std::string witness, std::size_t cases) { return {Status::Fail, std::move(witness), cases}; }
    static Verdict skipped(std::string reason) { return {Status::Skipped, std::move(reason), 0}; }

    /// Keeps the first failure; otherwise adds case counts.
    Verdict& operator&=(const Verdict& other);
};

/// Independent generator per (seed, sample index), so results do not depend on evaluation order.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace taugeo
