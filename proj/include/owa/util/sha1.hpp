#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace owa {

// SHA-1 over a byte buffer, 20-byte digest.
struct Sha1 {
    void update(std::string_view data);
    void final(unsigned char out[20]);

  private:
    void process_block(const unsigned char* block);

    uint32_t state_[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};
    unsigned char buf_[64];
    size_t buf_len_ = 0;
    uint64_t total_ = 0;
};

// Uppercase RFC 4648 base32, no padding (32 chars for a SHA-1 digest).
// This is the Wayback CDX digest convention.
std::string sha1_base32(std::string_view data);

}  // namespace owa
