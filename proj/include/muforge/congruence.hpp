#pragma once

namespace muforge {

// Shifts the modulus of one numbered congruence inside a checker. Used by the
// negative-control suites; the default leaves every congruence untouched.
struct Mutation {
    int id = -1;
    long delta = 0;

    long modulus(int cid, long m) const { return cid == id ? m + delta : m; }
};

}  // namespace muforge
