#pragma once

// JSON state files and report helpers.

#include "witnesslab/canonical_forms.hpp"
#include "witnesslab/concurrence.hpp"
#include "witnesslab/errors.hpp"
#include "witnesslab/system_spec.hpp"
#include "witnesslab/tensor_core.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace witnesslab::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kSignificantDigits = 12;

inline constexpr double kSnapToZero = 1e-13;

/// x rounded to 12 significant digits; magnitudes below 1e-13 and -0 become 0.
inline double round_sig(double x) {
    if (std::abs(x) < kSnapToZero) return 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

inline Json number(double x) { return round_sig(x); }

inline Json complex_pair(cplx z) { return Json::array({number(z.real()), number(z.imag())}); }

inline Json real_array(const RVector& v) {
    Json out = Json::array();
    for (Index k = 0; k < v.size(); ++k) out.push_back(number(v(k)));
    return out;
}

inline Json complex_array(const CVector& v) {
    Json out = Json::array();
    for (Index k = 0; k < v.size(); ++k) out.push_back(complex_pair(v(k)));
    return out;
}

/// Row-major flattening.
inline Json complex_matrix(const CMatrix& m) {
    Json out = Json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) out.push_back(complex_pair(m(i, j)));
    return out;
}

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

enum class StateType { Pure, Mixed };

/// Pure data: the state's amplitudes (the n x n coefficient matrix for
/// identical particles). Mixed data: the density matrix on the composite space.
struct StateFile {
    int schema_version = kSchemaVersion;
    SystemSpec system;
    StateType state_type = StateType::Pure;
    CVector data;

    [[nodiscard]] PureState pure() const {
        require(state_type == StateType::Pure, ErrorKind::BadInput, "state file holds a mixed state");
        return {system, data};
    }

    [[nodiscard]] MixedState mixed() const {
        require(state_type == StateType::Mixed, ErrorKind::BadInput, "state file holds a pure state");
        const auto d = static_cast<Index>(system.composite_dim());
        CMatrix rho(d, d);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) rho(i, j) = data(i * d + j);
        return {system, rho};
    }

    static StateFile from_pure(const PureState& psi) { return {kSchemaVersion, psi.spec, StateType::Pure, psi.amplitudes}; }

    static StateFile from_mixed(const SystemSpec& spec, const CMatrix& rho) {
        CVector flat(rho.size());
        for (Index i = 0; i < rho.rows(); ++i)
            for (Index j = 0; j < rho.cols(); ++j) flat(i * rho.cols() + j) = rho(i, j);
        return {kSchemaVersion, spec, StateType::Mixed, flat};
    }
};

inline Json to_json(const StateFile& s) {
    Json j;
    j["schema_version"] = s.schema_version;
    j["system"] = s.system.to_string();
    j["state_type"] = s.state_type == StateType::Pure ? "pure" : "mixed";
    j["data"] = complex_array(s.data);
    return j;
}

inline std::string serialize(const StateFile& s) { return to_json(s).dump(2) + "\n"; }

inline StateFile parse_state(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::BadInput, std::string("state file is not valid JSON: ") + e.what());
    }
    try {
        StateFile s{kSchemaVersion, SystemSpec::parse(j.at("system").get<std::string>()), StateType::Pure, {}};
        s.schema_version = j.at("schema_version").get<int>();
        require(s.schema_version == kSchemaVersion, ErrorKind::BadInput,
                "unsupported schema_version " + std::to_string(s.schema_version));
        const auto type = j.at("state_type").get<std::string>();
        require(type == "pure" || type == "mixed", ErrorKind::BadInput, "state_type must be pure or mixed");
        s.state_type = type == "pure" ? StateType::Pure : StateType::Mixed;

        const auto& data = j.at("data");
        require(data.is_array(), ErrorKind::BadInput, "data must be an array of [re, im] pairs");
        s.data = CVector(static_cast<Index>(data.size()));
        for (std::size_t k = 0; k < data.size(); ++k) {
            const auto& z = data[k];
            require(z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number(), ErrorKind::BadInput,
                    "data entry " + std::to_string(k) + " is not a [re, im] pair");
            s.data(static_cast<Index>(k)) = cplx(z[0].get<double>(), z[1].get<double>());
        }

        const auto expected = s.state_type == StateType::Pure
                                  ? s.system.amplitude_count()
                                  : s.system.composite_dim() * s.system.composite_dim();
        require(s.data.size() == expected, ErrorKind::DimensionMismatch,
                s.system.to_string() + " " + type + " data needs " + std::to_string(expected) + " entries, got " +
                    std::to_string(s.data.size()));
        if (s.state_type == StateType::Pure) {
            if (s.system.kind() == SystemKind::Boson2)
                require(tensor::is_symmetric(tensor::unvec(s.data, s.system.n())), ErrorKind::BadInput,
                        "boson coefficient matrix must be symmetric");
            if (s.system.kind() == SystemKind::Fermion2)
                require(tensor::is_antisymmetric(tensor::unvec(s.data, s.system.n())), ErrorKind::BadInput,
                        "fermion coefficient matrix must be antisymmetric");
            const double norm = state_norm(s.pure());
            require(std::abs(norm - 1.0) <= 1e-8, ErrorKind::BadInput, "pure state is not normalized");
        } else {
            (void)s.mixed();
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::BadInput, std::string("malformed state file: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::BadInput, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::BadInput, "cannot write " + path);
    out << text;
}

} // namespace witnesslab::io
