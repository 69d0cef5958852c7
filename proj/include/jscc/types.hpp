#ifndef JSCC_TYPES_HPP
#define JSCC_TYPES_HPP

namespace jscc {

/// Per-user mean-square distortions.
struct DistortionPair {
    double d1 = 0.0;
    double d2 = 0.0;
    double sum() const { return d1 + d2; }
};

} // namespace jscc

#endif
