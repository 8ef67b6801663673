#include "qent/state_io.hpp"

#include "qent/experiments.hpp"
#include "qent/measures.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace qent {

namespace {

using nlohmann::json;

cdouble parse_complex(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex entries must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Dims parse_dims(const json& j) {
    if (!j.is_array() || j.empty())
        throw ParseError("dims must be a non-empty list");
    Dims dims;
    for (const auto& d : j) {
        if (!d.is_number_integer() || d.get<int>() < 2)
            throw ParseError("each dimension must be an integer >= 2");
        dims.push_back(d.get<int>());
    }
    return dims;
}

void validate(StateFile& s) {
    long dim = total_dim(s.dims);
    if (s.pure) {
        if (s.amplitudes.size() != dim)
            throw DomainError("amplitude count does not match product of dims");
        if (std::abs(s.amplitudes.norm() - 1.0) > 1e-8)
            throw DomainError("pure state amplitudes are not normalized");
    } else {
        if (s.matrix.rows() != dim || s.matrix.cols() != dim)
            throw DomainError("matrix shape does not match product of dims");
        if (!is_hermitian(s.matrix, 1e-8))
            throw DomainError("density matrix is not Hermitian");
        if (std::abs(s.matrix.trace().real() - 1.0) > 1e-8)
            throw DomainError("density matrix trace is not 1");
        if (!is_psd(s.matrix, 1e-8))
            throw DomainError("density matrix is not positive semidefinite");
    }
}

StateFile from_pure(const Vec& psi, Dims dims) {
    StateFile s;
    s.pure = true;
    s.dims = std::move(dims);
    s.amplitudes = psi;
    return s;
}

StateFile from_mixed(const Mat& rho, Dims dims) {
    StateFile s;
    s.pure = false;
    s.dims = std::move(dims);
    s.matrix = rho;
    return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

int parse_int(const std::string& text, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid " + what + ": '" + text + "'");
    }
}

}  // namespace

StateFile parse_state_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("state file must be a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ParseError("missing string field 'kind'");
    std::string kind = j["kind"].get<std::string>();
    if (kind != "pure" && kind != "mixed")
        throw ParseError("kind must be 'pure' or 'mixed'");
    if (!j.contains("dims")) throw ParseError("missing field 'dims'");

    StateFile s;
    s.pure = (kind == "pure");
    s.dims = parse_dims(j["dims"]);
    long dim = total_dim(s.dims);

    if (s.pure) {
        if (!j.contains("amplitudes") || !j["amplitudes"].is_array())
            throw ParseError("pure state needs an 'amplitudes' list");
        const auto& amps = j["amplitudes"];
        s.amplitudes = Vec::Zero(dim);
        if (static_cast<long>(amps.size()) != dim)
            throw DomainError("amplitude count does not match product of dims");
        for (long i = 0; i < dim; ++i) s.amplitudes(i) = parse_complex(amps[i]);
    } else {
        if (!j.contains("matrix") || !j["matrix"].is_array())
            throw ParseError("mixed state needs a 'matrix' of rows");
        const auto& rows = j["matrix"];
        if (static_cast<long>(rows.size()) != dim)
            throw DomainError("matrix shape does not match product of dims");
        s.matrix = Mat::Zero(dim, dim);
        for (long r = 0; r < dim; ++r) {
            if (!rows[r].is_array() || static_cast<long>(rows[r].size()) != dim)
                throw DomainError("matrix shape does not match product of dims");
            for (long c = 0; c < dim; ++c) s.matrix(r, c) = parse_complex(rows[r][c]);
        }
    }
    validate(s);
    return s;
}

StateFile load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_state_json(buf.str());
}

StateFile builtin_state(const std::string& name) {
    auto parts = split(name, ':');
    const std::string& head = parts[0];

    if (head == "bell") {
        if (parts.size() != 1) throw ParseError("bell takes no parameters");
        return from_pure(bell_state(), {2, 2});
    }
    if (head == "ghz") {
        if (parts.size() > 3) throw ParseError("usage: ghz[:N[:p]]");
        int n = parts.size() >= 2 ? parse_int(parts[1], "ghz size") : 3;
        double p = 0.5;
        if (parts.size() == 3) {
            try {
                p = std::stod(parts[2]);
            } catch (const std::exception&) {
                throw ParseError("invalid ghz weight: '" + parts[2] + "'");
            }
        }
        if (n < 2) throw DomainError("ghz needs at least 2 qubits");
        if (p < 0.0 || p > 1.0) throw DomainError("ghz weight must lie in [0, 1]");
        return from_pure(ghz_state(n, p), Dims(n, 2));
    }
    if (head == "w") {
        if (parts.size() > 2) throw ParseError("usage: w[:N]");
        int n = parts.size() == 2 ? parse_int(parts[1], "w size") : 3;
        if (n < 2) throw DomainError("w needs at least 2 qubits");
        return from_pure(w_state(n), Dims(n, 2));
    }
    if (head == "smolin") {
        if (parts.size() != 1) throw ParseError("smolin takes no parameters");
        return from_mixed(smolin_state(), {2, 2, 2, 2});
    }
    if (head == "dur") {
        if (parts.size() != 1) throw ParseError("dur takes no parameters");
        return from_mixed(dur_state(), {2, 2, 2, 2});
    }
    if (head == "heisenberg") {
        if (parts.size() != 3) throw ParseError("usage: heisenberg:N:s");
        int n = parse_int(parts[1], "heisenberg size");
        int spins = parse_int(parts[2], "heisenberg flip count");
        if (n < 1 || n > 20) throw DomainError("heisenberg size must lie in 1..20");
        if (spins < 0 || spins > n) throw DomainError("heisenberg flip count must lie in 0..N");
        return from_pure(heisenberg_state(n, spins), Dims(n, 2));
    }
    throw ParseError("unknown builtin state: '" + name + "'");
}

StateFile resolve_state(const std::string& spec) {
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0) return builtin_state(spec.substr(prefix.size()));
    return load_state_file(spec);
}

std::string state_to_json(const StateFile& s) {
    json j;
    j["kind"] = s.pure ? "pure" : "mixed";
    j["dims"] = s.dims;
    if (s.pure) {
        json amps = json::array();
        for (long i = 0; i < s.amplitudes.size(); ++i)
            amps.push_back({s.amplitudes(i).real(), s.amplitudes(i).imag()});
        j["amplitudes"] = amps;
    } else {
        json rows = json::array();
        for (long r = 0; r < s.matrix.rows(); ++r) {
            json row = json::array();
            for (long c = 0; c < s.matrix.cols(); ++c)
                row.push_back({s.matrix(r, c).real(), s.matrix(r, c).imag()});
            rows.push_back(row);
        }
        j["matrix"] = rows;
    }
    return j.dump(2);
}

}  // namespace qent
