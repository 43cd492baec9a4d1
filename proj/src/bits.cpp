#include "relmatch/bits.hpp"

namespace relmatch {

void BitWriter::write(std::uint64_t value, unsigned width) {
    if (width == 0 || width > 64)
        throw InternalError("BitWriter: field width must be in [1,64]");
    for (unsigned i = width; i-- > 0;) {
        const unsigned bit = static_cast<unsigned>((value >> i) & 1u);
        const unsigned offset = static_cast<unsigned>(nbits_ & 7u);
        if (offset == 0) bytes_.push_back(0);
        bytes_.back() |= static_cast<std::uint8_t>(bit << (7 - offset));
        ++nbits_;
    }
}

void BitWriter::write_packed(std::uint64_t value) {
    unsigned width = 1;
    for (std::uint64_t v = value; v > 1; v >>= 1) ++width;
    write(width - 1, 6);
    write(value, width);
}

BitString BitWriter::finish() {
    BitString out;
    out.bytes = std::move(bytes_);
    out.nbits = nbits_;
    bytes_.clear();
    nbits_ = 0;
    return out;
}

std::uint64_t BitReader::read(unsigned width) {
    if (width == 0 || width > 64)
        throw StateError("BitReader: field width must be in [1,64]");
    if (pos_ + width > bits_.nbits)
        throw StateError("BitReader: truncated state");
    std::uint64_t value = 0;
    for (unsigned i = 0; i < width; ++i) {
        const std::uint64_t byte = bits_.bytes[pos_ >> 3];
        const unsigned offset = static_cast<unsigned>(pos_ & 7u);
        value = (value << 1) | ((byte >> (7 - offset)) & 1u);
        ++pos_;
    }
    return value;
}

std::uint64_t BitReader::read_packed() {
    const unsigned width = static_cast<unsigned>(read(6)) + 1;
    return read(width);
}

unsigned bit_width_for(std::uint64_t n) {
    unsigned w = 1;
    while (n > (std::uint64_t{1} << w) && w < 64) ++w;
    return w;
}

} // namespace relmatch
