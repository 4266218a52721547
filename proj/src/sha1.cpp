#include "owa/util/sha1.hpp"

#include <cstring>

namespace owa {

static inline uint32_t rol(uint32_t v, int n) { return (v << n) | (v >> (32 - n)); }

void Sha1::process_block(const unsigned char* block) {
    uint32_t w[80];
    for (int i = 0; i < 16; ++i) {
        w[i] = (uint32_t(block[i * 4]) << 24) | (uint32_t(block[i * 4 + 1]) << 16) |
               (uint32_t(block[i * 4 + 2]) << 8) | uint32_t(block[i * 4 + 3]);
    }
    for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);

    uint32_t a = state_[0], b = state_[1], c = state_[2], d = state_[3], e = state_[4];
    for (int i = 0; i < 80; ++i) {
        uint32_t f, k;
        if (i < 20) {
            f = (b & c) | (~b & d);
            k = 0x5A827999u;
        } else if (i < 40) {
            f = b ^ c ^ d;
            k = 0x6ED9EBA1u;
        } else if (i < 60) {
            f = (b & c) | (b & d) | (c & d);
            k = 0x8F1BBCDCu;
        } else {
            f = b ^ c ^ d;
            k = 0xCA62C1D6u;
        }
        uint32_t tmp = rol(a, 5) + f + e + k + w[i];
        e = d;
        d = c;
        c = rol(b, 30);
        b = a;
        a = tmp;
    }
    state_[0] += a;
    state_[1] += b;
    state_[2] += c;
    state_[3] += d;
    state_[4] += e;
}

void Sha1::update(std::string_view data) {
    total_ += data.size();
    const unsigned char* p = reinterpret_cast<const unsigned char*>(data.data());
    size_t n = data.size();
    if (buf_len_ > 0) {
        size_t take = std::min(n, 64 - buf_len_);
        std::memcpy(buf_ + buf_len_, p, take);
        buf_len_ += take;
        p += take;
        n -= take;
        if (buf_len_ == 64) {
            process_block(buf_);
            buf_len_ = 0;
        }
    }
    while (n >= 64) {
        process_block(p);
        p += 64;
        n -= 64;
    }
    if (n > 0) {
        std::memcpy(buf_, p, n);
        buf_len_ = n;
    }
}

void Sha1::final(unsigned char out[20]) {
    uint64_t bit_len = total_ * 8;
    unsigned char pad = 0x80;
    update(std::string_view(reinterpret_cast<const char*>(&pad), 1));
    unsigned char zero = 0;
    while (buf_len_ != 56) update(std::string_view(reinterpret_cast<const char*>(&zero), 1));
    unsigned char len_be[8];
    for (int i = 0; i < 8; ++i) len_be[i] = (unsigned char)(bit_len >> (56 - 8 * i));
    std::memcpy(buf_ + 56, len_be, 8);
    process_block(buf_);
    for (int i = 0; i < 5; ++i) {
        out[i * 4] = (unsigned char)(state_[i] >> 24);
        out[i * 4 + 1] = (unsigned char)(state_[i] >> 16);
        out[i * 4 + 2] = (unsigned char)(state_[i] >> 8);
        out[i * 4 + 3] = (unsigned char)(state_[i]);
    }
}

std::string sha1_base32(std::string_view data) {
    Sha1 h;
    h.update(data);
    unsigned char digest[20];
    h.final(digest);

    static const char alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ234567";
    std::string out;
    out.reserve(32);
    int bits = 0;
    uint32_t acc = 0;
    for (unsigned char byte : digest) {
        acc = (acc << 8) | byte;
        bits += 8;
        while (bits >= 5) {
            out.push_back(alphabet[(acc >> (bits - 5)) & 0x1f]);
            bits -= 5;
        }
    }
    return out;  // 160 bits = exactly 32 chars
}

}  // namespace owa
