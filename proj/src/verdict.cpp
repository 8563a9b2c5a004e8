#include "taugeo/verdict.hpp"

namespace taugeo {

std::string to_string(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    }
    return "?";
}

Verdict& Verdict::operator&=(const Verdict& other) {
    if (failed()) return *this;
    if (other.failed()) {
        status = Status::Fail;
        witness = other.witness;
        cases += other.cases;
        return *this;
    }
    cases += other.cases;
    return *this;
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace taugeo
