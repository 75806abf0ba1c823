#pragma once

#include "witnesslab/errors.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace witnesslab {

enum class SystemKind { Distinguishable, Boson2, Fermion2 };

/// Which particles make up the composite system.
///
/// Distinguishable carries one single-particle dimension per party (slot 1 is
/// the leftmost tensor factor). Boson2 / Fermion2 describe two identical
/// particles sharing an n-dimensional single-particle space.
class SystemSpec {
  public:
    static SystemSpec distinguishable(std::vector<int> dims) {
        require(dims.size() >= 2, ErrorKind::BadDimension, "distinguishable systems need at least two parties");
        for (int d : dims) require(d >= 2, ErrorKind::BadDimension, "every party needs dimension >= 2");
        return SystemSpec(SystemKind::Distinguishable, std::move(dims));
    }
    static SystemSpec boson(int n) {
        require(n >= 2, ErrorKind::BadDimension, "boson systems need n >= 2");
        return SystemSpec(SystemKind::Boson2, {n});
    }
    static SystemSpec fermion(int n) {
        require(n >= 2, ErrorKind::BadDimension, "fermion systems need n >= 2");
        return SystemSpec(SystemKind::Fermion2, {n});
    }

    /// Parses "dist:2,3", "boson:4" or "fermion:5".
    static SystemSpec parse(std::string_view text) {
        const auto colon = text.find(':');
        require(colon != std::string_view::npos, ErrorKind::BadInput,
                "system must look like dist:<d1,d2,...>, boson:<n> or fermion:<n>, got '" + std::string(text) + "'");
        const auto head = text.substr(0, colon);
        const auto numbers = parse_list(text.substr(colon + 1));
        if (head == "dist") return distinguishable(numbers);
        require(numbers.size() == 1, ErrorKind::BadInput, "identical-particle systems take a single dimension");
        if (head == "boson") return boson(numbers[0]);
        if (head == "fermion") return fermion(numbers[0]);
        throw Error(ErrorKind::BadInput, "unknown system kind '" + std::string(head) + "'");
    }

    [[nodiscard]] SystemKind kind() const { return kind_; }
    [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
    [[nodiscard]] bool identical() const { return kind_ != SystemKind::Distinguishable; }
    [[nodiscard]] bool bipartite() const { return identical() || dims_.size() == 2; }

    /// Single-particle dimension for identical particles.
    [[nodiscard]] int n() const { return dims_.front(); }

    [[nodiscard]] std::int64_t composite_dim() const {
        switch (kind_) {
        case SystemKind::Distinguishable: {
            std::int64_t d = 1;
            for (int x : dims_) d *= x;
            return d;
        }
        case SystemKind::Boson2: return std::int64_t{n()} * (n() + 1) / 2;
        case SystemKind::Fermion2: return std::int64_t{n()} * (n() - 1) / 2;
        }
        return 0;
    }

    /// Length of the amplitude vector a pure state of this system carries:
    /// the full product basis, or the n x n coefficient matrix for identical particles.
    [[nodiscard]] std::int64_t amplitude_count() const {
        return identical() ? std::int64_t{n()} * n() : composite_dim();
    }

    [[nodiscard]] std::string to_string() const {
        std::string out;
        switch (kind_) {
        case SystemKind::Distinguishable: out = "dist:"; break;
        case SystemKind::Boson2: out = "boson:"; break;
        case SystemKind::Fermion2: out = "fermion:"; break;
        }
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(dims_[i]);
        }
        return out;
    }

    friend bool operator==(const SystemSpec&, const SystemSpec&) = default;

  private:
    SystemSpec(SystemKind kind, std::vector<int> dims) : kind_(kind), dims_(std::move(dims)) {}

    static std::vector<int> parse_list(std::string_view text) {
        std::vector<int> out;
        while (true) {
            const auto comma = text.find(',');
            const auto token = text.substr(0, comma);
            int value = 0;
            const auto* end = token.data() + token.size();
            const auto [ptr, ec] = std::from_chars(token.data(), end, value);
            require(ec == std::errc() && ptr == end && !token.empty(), ErrorKind::BadInput,
                    "bad dimension '" + std::string(token) + "'");
            out.push_back(value);
            if (comma == std::string_view::npos) break;
            text.remove_prefix(comma + 1);
        }
        return out;
    }

    SystemKind kind_;
    std::vector<int> dims_;
};

} // namespace witnesslab
