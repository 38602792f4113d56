// include/dylab/cost.hpp - deterministic digit-operation accounting.
//
// The cost model: one digit op per primitive operation on a machine-word
// limb (add/sub/compare step, partial product, limb shifted or copied) plus
// one per output symbol emitted.  Arithmetic helpers tally into whichever
// meter is active on the current thread; with no meter active the tally is
// dropped.  Identical inputs perform identical limb work, so tallies are
// exact and reproducible, never sampled.
#pragma once

#include <cstdint>
#include <optional>

namespace dylab::cost {

struct Meter {
    std::uint64_t digit_ops = 0;
};

inline thread_local Meter* active_meter = nullptr;

inline void tally(std::uint64_t n) {
    if (active_meter != nullptr) active_meter->digit_ops += n;
}

// Activates a fresh meter for the current scope.  On exit the tally also
// folds into the enclosing meter, so nested measurements stay consistent.
class Scope {
  public:
    Scope() : prev_(active_meter) { active_meter = &meter_; }
    ~Scope() {
        active_meter = prev_;
        if (prev_ != nullptr) prev_->digit_ops += meter_.digit_ops;
    }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

    std::uint64_t digit_ops() const { return meter_.digit_ops; }

  private:
    Meter meter_;
    Meter* prev_;
};

// One measured run.  digit_ops always includes one op per output symbol,
// so digit_ops >= output_len / 2 holds by construction.  k and n are set
// only for real-evaluation runs.  Wall time is recorded for curiosity and
// never asserted anywhere.
struct CostReport {
    std::uint64_t input_len = 0;
    std::optional<std::uint32_t> k;
    std::optional<std::uint32_t> n;
    std::uint64_t output_len = 0;
    std::uint64_t digit_ops = 0;
    std::uint32_t oracle_depth = 0;
    std::uint64_t oracle_count = 0;
    double wall_seconds = 0.0;
};

}  // namespace dylab::cost
