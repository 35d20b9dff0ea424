#pragma once

namespace privfn {

// Size caps. Configuration, not hard constants; every enumerating operation
// takes one of these and throws CapError instead of running away.
struct Limits {
    int max_alphabet = 64;                       // |X|, |Y| for single-letter objects
    long long max_block_outcomes = 1LL << 20;    // |X|^n * |Y|^n for block extensions
    int max_partition_ground = 10;               // Bell-number enumeration cap
    int max_example1_n = 3;                      // block length for the built-in instance
    long long max_encoder_pairs = 20'000'000;    // brute-force encoder search budget
};

} // namespace privfn
