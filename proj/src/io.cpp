#include "semiradius/harness/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace semiradius::harness {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("read failed: " + path.string());
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError("write failed: " + path.string());
}

std::string format_double(double v) {
    // "-0" would parse back as the integer 0
    if (v == 0.0 && std::signbit(v))
        return "-0.0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void append_matrix(std::string& out, const char* key, const MatrixXcd& m) {
    out += ",\n  \"";
    out += key;
    out += "\": [";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i ? ",\n    [" : "\n    [";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j)
                out += ", ";
            out += '[' + format_double(m(i, j).real()) + ", " + format_double(m(i, j).imag()) + ']';
        }
        out += ']';
    }
    out += "\n  ]";
}

MatrixXcd parse_matrix(const json& j, const char* key) {
    if (!j.is_array())
        throw IoError(std::string("\"") + key + "\" must be an array of rows");
    const auto rows = Eigen::Index(j.size());
    if (rows == 0)
        throw IoError(std::string("\"") + key + "\" is empty");
    const auto cols = Eigen::Index(j[0].is_array() ? j[0].size() : 0);
    MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[std::size_t(i)];
        if (!row.is_array())
            throw IoError(std::string("\"") + key + "\" row " + std::to_string(i) + " is not an array");
        if (Eigen::Index(row.size()) != cols)
            throw Error(ErrorKind::dimension_mismatch, std::string("\"") + key + "\" has ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& e = row[std::size_t(c)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw IoError(std::string("\"") + key + "\" entry (" + std::to_string(i) + ", " + std::to_string(c) +
                              ") must be a [re, im] pair of numbers");
            m(i, c) = {e[0].get<double>(), e[1].get<double>()};
        }
    }
    return m;
}

InstanceSpec parse_spec(const json& j) {
    InstanceSpec s;
    try {
        s.dim = j.at("dim").get<int>();
        s.rank_a = j.at("rank_a").get<int>();
        const auto c = parse_construction(j.at("construction").get<std::string>());
        if (!c)
            throw IoError("unknown construction in meta");
        s.construction = *c;
        s.seed = j.at("seed").get<std::uint64_t>();
        s.scale = j.value("scale", 1.0);
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed meta: ") + e.what());
    }
    return s;
}

} // namespace

std::string instance_to_json(const Instance& inst) {
    std::string out = "{\n  \"dim\": " + std::to_string(inst.dim());
    if (inst.spec) {
        const auto& s = *inst.spec;
        char seed[32];
        std::snprintf(seed, sizeof seed, "%" PRIu64, s.seed);
        out += ",\n  \"meta\": {\"dim\": " + std::to_string(s.dim) + ", \"rank_a\": " + std::to_string(s.rank_a) +
               ", \"construction\": \"" + std::string(to_string(s.construction)) + "\", \"seed\": " + seed +
               ", \"scale\": " + format_double(s.scale) + "}";
    }
    append_matrix(out, "A", inst.a);
    append_matrix(out, "T", inst.t);
    if (inst.x)
        append_matrix(out, "X", *inst.x);
    if (inst.y)
        append_matrix(out, "Y", *inst.y);
    if (inst.s)
        append_matrix(out, "S", *inst.s);
    out += "\n}\n";
    return out;
}

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object())
        throw IoError("instance must be a JSON object");
    if (!j.contains("A") || !j.contains("T"))
        throw IoError("instance needs both \"A\" and \"T\"");

    Instance inst;
    inst.a = parse_matrix(j["A"], "A");
    inst.t = parse_matrix(j["T"], "T");
    const Eigen::Index n = inst.a.rows();
    auto check = [&](const MatrixXcd& m, const char* key) {
        if (m.rows() != n || m.cols() != n)
            throw Error(ErrorKind::dimension_mismatch, std::string("\"") + key + "\" is " + std::to_string(m.rows()) +
                                                           "x" + std::to_string(m.cols()) + ", expected " +
                                                           std::to_string(n) + "x" + std::to_string(n));
    };
    check(inst.a, "A");
    check(inst.t, "T");
    for (const char* key : {"X", "Y", "S"}) {
        if (!j.contains(key))
            continue;
        MatrixXcd m = parse_matrix(j[key], key);
        check(m, key);
        (key[0] == 'X' ? inst.x : key[0] == 'Y' ? inst.y : inst.s) = std::move(m);
    }
    if (j.contains("dim")) {
        if (!j["dim"].is_number_integer())
            throw IoError("\"dim\" must be an integer");
        if (j["dim"].get<long long>() != n)
            throw Error(ErrorKind::dimension_mismatch,
                        "\"dim\" says " + std::to_string(j["dim"].get<long long>()) + " but A is " + std::to_string(n) +
                            "x" + std::to_string(n));
    }
    if (j.contains("meta"))
        inst.spec = parse_spec(j["meta"]);
    return inst;
}

std::string range_cloud_csv(const RangeCloud<double>& cloud) {
    std::string out = "theta,re,im\n";
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const double th = cloud.thetas[i];
        out += (std::isnan(th) ? std::string("nan") : format_double(th)) + ',' + format_double(cloud.points[i].real()) +
               ',' + format_double(cloud.points[i].imag()) + '\n';
    }
    return out;
}

json to_json(const InstanceSpec& spec) {
    return {{"dim", spec.dim},
            {"rank_a", spec.rank_a},
            {"construction", to_string(spec.construction)},
            {"seed", spec.seed},
            {"scale", spec.scale}};
}

json to_json(const RadiusEstimate<double>& est) {
    return {{"lower", est.lower},
            {"upper", est.upper},
            {"width", est.width()},
            {"theta_star", est.theta_star},
            {"grid_n", est.grid_n},
            {"method", est.method == RadiusMethod::theta_scan ? "theta_scan" : "sampling"},
            {"refined", est.refined},
            {"evaluations", est.evaluations}};
}

json to_json(const OperatorParts<double>& p) {
    return {{"norm", p.norm},           {"re", p.re},
            {"im", p.im},               {"re_plus_im", p.re_plus_im},
            {"re_minus_im", p.re_minus_im}, {"sharp_sum", p.sharp_sum}};
}

json to_json(const BoundReport<double>& r) {
    return {{"formula_id", to_string(r.formula_id)},
            {"sense", r.sense == Sense::at_least ? ">=" : "<="},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"slack", r.slack},
            {"scale", r.scale},
            {"holds", r.holds},
            {"tight", r.tight},
            {"radicand_clamped", r.radicand_clamped}};
}

json to_json(const EqualityDiagnostic<double>& d) {
    return {{"case", to_string(d.case_id)},
            {"equality_holds", d.equality_holds},
            {"re_im_constant", d.re_im_constant},
            {"disk", {{"is_disk", d.disk.is_disk}, {"radius_k", d.disk.radius_k}, {"max_deviation", d.disk.max_deviation}}},
            {"target", d.target},
            {"max_re_im_deviation", d.max_re_im_deviation}};
}

json to_json(const CommutatorComparison<double>& c) {
    return {{"alpha1", c.alpha1},
            {"alpha2", c.alpha2},
            {"beta1", c.beta1},
            {"beta2", c.beta2},
            {"zamani_bound", c.zamani_bound},
            {"refined31", c.refined31},
            {"refined32", c.refined32},
            {"w_plus", c.w_plus},
            {"w_minus", c.w_minus},
            {"scale", c.scale},
            {"radicand_clamped", c.radicand_clamped}};
}

} // namespace semiradius::harness
