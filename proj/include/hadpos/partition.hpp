#pragma once

#include "hadpos/errors.hpp"
#include "hadpos/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace hadpos {

// Weakly decreasing tuple of non-negative integers. Trailing zeros are
// kept as stored; equality compares after stripping them, since hook
// partitions carry meaningful zero parts in their indexing.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<long long> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0)
                throw Error("Partition: negative part");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw Error("Partition: parts must be weakly decreasing");
        }
    }

    const std::vector<long long>& parts() const { return parts_; }

    std::size_t length() const { return parts_.size(); }

    // Part at position i, zero beyond the stored length.
    long long part(std::size_t i) const {
        return i < parts_.size() ? parts_[i] : 0;
    }

    std::size_t num_nonzero() const {
        std::size_t k = parts_.size();
        while (k > 0 && parts_[k - 1] == 0) --k;
        return k;
    }

    long long weight() const {
        long long w = 0;
        for (auto p : parts_) w += p;
        return w;
    }

    bool empty() const { return num_nonzero() == 0; }

    // Conjugate (transposed Young diagram) partition.
    Partition conjugate() const {
        std::vector<long long> out;
        if (!parts_.empty() && parts_[0] > 0) {
            out.resize(static_cast<std::size_t>(parts_[0]));
            for (std::size_t c = 0; c < out.size(); ++c) {
                long long cnt = 0;
                for (auto p : parts_)
                    if (p > static_cast<long long>(c)) ++cnt;
                out[c] = cnt;
            }
        }
        return Partition(std::move(out));
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        std::size_t n = std::max(a.length(), b.length());
        for (std::size_t i = 0; i < n; ++i)
            if (a.part(i) != b.part(i)) return false;
        return true;
    }

    friend bool operator!=(const Partition& a, const Partition& b) {
        return !(a == b);
    }

private:
    std::vector<long long> parts_;
};

struct HookParams {
    long long M;
    long long N;
    long long j;
};

// Hook partition mu(M, N, j) = (M-N+1, 1 x (N-j-1), 0 x j).
inline Partition hook_partition(const HookParams& p) {
    if (p.N < 1 || p.M < p.N)
        throw InvalidHook("hook_partition: requires M >= N >= 1");
    if (p.j < 0 || p.j > p.N - 1)
        throw InvalidHook("hook_partition: j out of [0, N-1]");
    std::vector<long long> parts;
    parts.reserve(static_cast<std::size_t>(p.N));
    parts.push_back(p.M - p.N + 1);
    for (long long k = 0; k < p.N - p.j - 1; ++k) parts.push_back(1);
    for (long long k = 0; k < p.j; ++k) parts.push_back(0);
    return Partition(std::move(parts));
}

} // namespace hadpos
