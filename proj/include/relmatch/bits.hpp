#pragma once

#include <cstdint>
#include <vector>

#include "relmatch/errors.hpp"

namespace relmatch {

/// A bit string with an exact length. Engine states serialize to this;
/// the space meter reports `size_bits()` and protocol messages are
/// measured the same way. Byte padding beyond `size_bits()` is always
/// zero so equal bit strings compare equal bytewise.
struct BitString {
    std::vector<std::uint8_t> bytes;
    std::uint64_t nbits = 0;

    std::uint64_t size_bits() const { return nbits; }
    bool operator==(const BitString&) const = default;
};

/// MSB-first bit writer with fixed-width and self-delimiting fields.
class BitWriter {
public:
    /// Append the `width` low bits of `value`, most significant first.
    void write(std::uint64_t value, unsigned width);

    /// Self-delimiting unsigned value: 6 bits of (bit-length - 1)
    /// followed by the value in exactly that many bits.
    void write_packed(std::uint64_t value);

    void write_bool(bool b) { write(b ? 1 : 0, 1); }

    BitString finish();

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t nbits_ = 0;
};

/// Reader matching BitWriter's encoding. Reads past the end throw StateError.
class BitReader {
public:
    explicit BitReader(const BitString& bits) : bits_(bits) {}

    std::uint64_t read(unsigned width);
    std::uint64_t read_packed();
    bool read_bool() { return read(1) != 0; }

    /// Bits not yet consumed.
    std::uint64_t remaining() const { return bits_.nbits - pos_; }

private:
    const BitString& bits_;
    std::uint64_t pos_ = 0;
};

/// Number of bits needed to store values in [0, n); at least 1.
unsigned bit_width_for(std::uint64_t n);

} // namespace relmatch
