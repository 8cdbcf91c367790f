#pragma once

#include <optional>
#include <vector>

#include "tjlab/algebra/graded.hpp"

namespace tjlab {

/// Basis of an L-site chain with local states {hole, down, up}, optionally
/// restricted to a fixed particle number. Codes are base-3 with site 1 as the
/// most significant digit, matching the graded factor ordering.
class FockBasis {
   public:
    FockBasis(int L, std::optional<int> particles = std::nullopt) : L_(L), particles_(particles) {
        if (L < 1 || L > 12) throw DomainError("FockBasis supports 1 <= L <= 12");
        if (particles && (*particles < 0 || *particles > L)) throw DomainError("particle number out of range");
        const auto full = ipow(kLocalDim, L);
        lookup_.assign(static_cast<std::size_t>(full), -1);
        for (std::int64_t c = 0; c < full; ++c) {
            if (particles && count_particles(c) != *particles) continue;
            lookup_[static_cast<std::size_t>(c)] = static_cast<std::int64_t>(codes_.size());
            codes_.push_back(c);
        }
    }

    int sites() const { return L_; }
    std::optional<int> particles() const { return particles_; }
    std::int64_t size() const { return static_cast<std::int64_t>(codes_.size()); }
    std::int64_t code(std::int64_t i) const { return codes_[static_cast<std::size_t>(i)]; }
    /// Index of a code in this basis, -1 if outside the sector.
    std::int64_t index(std::int64_t code) const { return lookup_[static_cast<std::size_t>(code)]; }

    /// Local state at site s (0-based, leftmost = 0).
    int local(std::int64_t code, int s) const { return digit(code, s, L_); }
    std::int64_t with_local(std::int64_t code, int s, int state) const {
        return code + (state - local(code, s)) * ipow(kLocalDim, L_ - 1 - s);
    }

    int count_particles(std::int64_t code) const {
        int n = 0;
        for (int s = 0; s < L_; ++s) n += local(code, s) != 0;
        return n;
    }

    int parity(std::int64_t code) const { return count_particles(code) & 1; }

   private:
    int L_;
    std::optional<int> particles_;
    std::vector<std::int64_t> codes_;
    std::vector<std::int64_t> lookup_;
};

}  // namespace tjlab
