#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gvn {

// Minimal SHA-256 (FIPS 180-4). Used for content-addressed cache keys,
// style/graph digests and parameter digests; not a security boundary.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const void* data, size_t len);
    void update(const std::string& s) { update(s.data(), s.size()); }
    std::array<uint8_t, 32> finish();

    static std::string hex(const void* data, size_t len);
    static std::string hex(const std::string& s) { return hex(s.data(), s.size()); }
    static std::string hex(const std::vector<uint8_t>& v) { return hex(v.data(), v.size()); }

private:
    void process_block(const uint8_t* p);

    uint32_t h_[8];
    uint64_t total_len_ = 0;
    uint8_t buf_[64];
    size_t buf_len_ = 0;
};

std::string to_hex(const std::array<uint8_t, 32>& d);

} // namespace gvn
