#include "dgs/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dgs {

std::string json_real(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
    return out;
}

namespace {

std::string real_array(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += json_real(v[i]);
    }
    out += "]";
    return out;
}

std::string int_array(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i]);
    }
    out += "]";
    return out;
}

// {label: value} map in ascending vertex order
std::string vertex_map(const WeightedGraph& g, const std::vector<std::pair<int, double>>& kv) {
    std::string out = "{";
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i) out += ", ";
        out += json_quote(g.label(kv[i].first)) + ": " + json_real(kv[i].second);
    }
    out += "}";
    return out;
}

}  // namespace

std::string spectrum_to_json(const WeightedGraph& g, const SpectralResult& r,
                             const double* second) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"ground_energy\": " << json_real(r.ground_energy) << ",\n";
    out << "  \"residual\": " << json_real(r.residual) << ",\n";
    out << "  \"iterations\": " << r.iterations << ",\n";
    if (second) out << "  \"second_eigenvalue\": " << json_real(*second) << ",\n";
    out << "  \"ground_state\": " << real_array(r.ground_state) << "\n";
    out << "}\n";
    (void)g;
    return out.str();
}

std::string supersolution_to_json(const WeightedGraph& g, const SupersolutionCertificate& c) {
    double min_slack = c.slack.empty() ? 0.0 : c.slack[0];
    for (double s : c.slack) min_slack = std::min(min_slack, s);
    std::ostringstream out;
    out << "{\n";
    out << "  \"energy\": " << json_real(c.energy) << ",\n";
    out << "  \"normalization_vertex\": " << c.normalization_vertex << ",\n";
    out << "  \"window\": " << int_array(c.window.members()) << ",\n";
    out << "  \"w\": " << real_array(c.w) << ",\n";
    out << "  \"slack\": " << real_array(c.slack) << ",\n";
    out << "  \"min_slack\": " << json_real(min_slack) << ",\n";
    out << "  \"slack_tolerance\": " << json_real(c.slack_tolerance) << "\n";
    out << "}\n";
    (void)g;
    return out.str();
}

std::string harnack_to_json(const WeightedGraph& g, const HarnackReport& r) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"constant\": " << json_real(r.constant) << ",\n";
    out << "  \"worst_pair\": [" << json_quote(g.label(r.worst_pair.first)) << ", "
        << json_quote(g.label(r.worst_pair.second)) << "],\n";
    out << "  \"witness_path\": [";
    for (std::size_t i = 0; i < r.witness_path.size(); ++i) {
        if (i) out << ", ";
        out << json_quote(g.label(r.witness_path[i]));
    }
    out << "],\n";
    out << "  \"method\": "
        << (r.method == HarnackMethod::DijkstraFastPath ? "\"dijkstra-fast-path\""
                                                        : "\"exact-enumeration\"")
        << "\n";
    out << "}\n";
    return out.str();
}

std::string shnol_rows_to_json(const std::vector<ShnolRow>& rows) {
    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ShnolRow& r = rows[i];
        out << "  {\"n\": " << r.n << ", \"norm\": " << json_real(r.norm)
            << ", \"p\": " << json_real(r.p) << ", \"q\": " << json_real(r.q)
            << ", \"quot_p\": " << json_real(r.quot_p) << ", \"quot_q\": " << json_real(r.quot_q)
            << ", \"weyl\": " << json_real(r.weyl) << "}";
        if (i + 1 < rows.size()) out << ",";
        out << "\n";
    }
    out << "]\n";
    return out.str();
}

std::string shnol_rows_to_csv(const std::vector<ShnolRow>& rows) {
    std::ostringstream out;
    out << "n,norm,p,q,quot_p,quot_q,weyl\n";
    for (const ShnolRow& r : rows) {
        out << r.n << ',' << json_real(r.norm) << ',' << json_real(r.p) << ',' << json_real(r.q)
            << ',' << json_real(r.quot_p) << ',' << json_real(r.quot_q) << ','
            << json_real(r.weyl) << "\n";
    }
    return out.str();
}

std::string boundary_to_json(const WeightedGraph& g, const BoundaryReport& b,
                             const CheegerReport* cheeger) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"dA\": " << int_array(b.bd.boundary_in.members()) << ",\n";
    out << "  \"dAc\": " << int_array(b.bd.boundary_out.members()) << ",\n";
    out << "  \"mu_on_dA\": " << vertex_map(g, b.mu_on_dA) << ",\n";
    out << "  \"mu_on_dAc\": " << vertex_map(g, b.mu_on_dAc) << ",\n";
    out << "  \"nu_on_dA\": " << vertex_map(g, b.nu_on_dA) << ",\n";
    out << "  \"nu_on_dAc\": " << vertex_map(g, b.nu_on_dAc);
    if (cheeger) {
        out << ",\n  \"cheeger\": {\"q1\": " << json_real(cheeger->q1)
            << ", \"Q1\": " << json_real(cheeger->big_q1)
            << ", \"p1_sq\": " << json_real(cheeger->p1_sq)
            << ", \"deg_dA\": " << cheeger->deg_dA << ", \"deg_dAc\": " << cheeger->deg_dAc
            << "}";
    }
    out << "\n}\n";
    return out.str();
}

std::string exhaustion_to_json(const std::vector<ExhaustionRow>& rows) {
    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ExhaustionRow& r = rows[i];
        out << "  {\"radius\": " << r.radius
            << ", \"ground_energy\": " << json_real(r.truncation_ground_energy)
            << ", \"core_values\": " << real_array(r.core_values)
            << ", \"sup_diff_prev\": " << json_real(r.sup_diff_prev) << "}";
        if (i + 1 < rows.size()) out << ",";
        out << "\n";
    }
    out << "]\n";
    return out.str();
}

void write_report(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace dgs
