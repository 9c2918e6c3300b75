#include "memristor/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "memristor/error.hpp"
#include "memristor/geometry.hpp"

namespace memristor {

namespace {

constexpr double kUniformTol = 1e-6;
constexpr double kResampleTol = 0.01;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_number(std::string_view text, std::size_t line, const char* column) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError(line, std::string("invalid number in column ") + column + ": '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) throw ParseError(line, std::string("non-finite value in column ") + column);
    return v;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

void check_written(std::ostream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("error while writing " + path);
}

}  // namespace

IVTrace read_trace(std::istream& in, std::vector<std::string>* warnings) {
    std::string raw;
    std::size_t line = 0;
    std::size_t t0_index = 0;
    bool have_header = false;
    std::array<int, 3> col{-1, -1, -1};
    std::size_t width = 0;
    std::vector<double> t, v, i;
    std::vector<std::size_t> row_line;

    while (std::getline(in, raw)) {
        ++line;
        const std::string_view s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '#') {
            const std::string_view body = trim(s.substr(1));
            constexpr std::string_view key = "t0_index=";
            if (body.substr(0, key.size()) == key) {
                const std::string_view num = trim(body.substr(key.size()));
                const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), t0_index);
                if (ec != std::errc() || ptr != num.data() + num.size()) {
                    throw ParseError(line, "invalid t0_index directive");
                }
            }
            continue;
        }
        const auto fields = split(s);
        if (!have_header) {
            for (std::size_t k = 0; k < fields.size(); ++k) {
                if (fields[k] == "t") col[0] = static_cast<int>(k);
                if (fields[k] == "v") col[1] = static_cast<int>(k);
                if (fields[k] == "i") col[2] = static_cast<int>(k);
            }
            const char* names[] = {"t", "v", "i"};
            for (int c = 0; c < 3; ++c) {
                if (col[c] < 0) throw ParseError(line, std::string("missing column '") + names[c] + "' in header");
            }
            width = fields.size();
            have_header = true;
            continue;
        }
        if (fields.size() != width) {
            throw ParseError(line, "expected " + std::to_string(width) + " fields, found " + std::to_string(fields.size()));
        }
        const double tv = parse_number(fields[static_cast<std::size_t>(col[0])], line, "t");
        if (!t.empty() && !(tv > t.back())) throw ParseError(line, "time is not strictly increasing");
        t.push_back(tv);
        v.push_back(parse_number(fields[static_cast<std::size_t>(col[1])], line, "v"));
        i.push_back(parse_number(fields[static_cast<std::size_t>(col[2])], line, "i"));
        row_line.push_back(line);
    }
    if (!have_header) throw ParseError(std::max<std::size_t>(line, 1), "missing header row 't,v,i'");
    if (t.size() < kMinTraceSamples) {
        throw ParseError(std::max<std::size_t>(line, 1), "fewer than " + std::to_string(kMinTraceSamples) +
                                                             " samples (found " + std::to_string(t.size()) + ")");
    }
    if (t0_index >= t.size()) throw ParseError(1, "t0_index beyond the last sample");

    const std::size_t n = t.size();
    const double mean_dt = (t.back() - t.front()) / static_cast<double>(n - 1);
    double worst = 0.0;
    std::size_t worst_row = 1;
    for (std::size_t k = 1; k < n; ++k) {
        const double dev = std::abs((t[k] - t[k - 1]) - mean_dt) / mean_dt;
        if (dev > worst) worst = dev, worst_row = k;
    }
    if (worst > kResampleTol) {
        throw ParseError(row_line[worst_row], "sample spacing deviates from uniform by more than 1%");
    }

    IVTrace tr;
    tr.t0_index = t0_index;
    if (worst <= kUniformTol) {
        tr.dt = t[1] - t[0];
        tr.t = std::move(t);
        tr.v = std::move(v);
        tr.i = std::move(i);
    } else {
        tr.dt = mean_dt;
        tr.t.resize(n);
        tr.v.resize(n);
        tr.i.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double tk = k + 1 == n ? t.back() : t.front() + static_cast<double>(k) * mean_dt;
            tr.t[k] = tk;
            interpolate(t, v, tk, tr.v[k]);
            interpolate(t, i, tk, tr.i[k]);
        }
        if (warnings) {
            std::ostringstream msg;
            msg << "non-uniform sample spacing (max deviation " << worst * 100.0
                << " %) resampled onto a uniform grid";
            warnings->push_back(msg.str());
        }
    }
    tr.validate();
    return tr;
}

IVTrace import_trace(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open trace file " + path);
    return read_trace(in, warnings);
}

void write_trace(std::ostream& out, const IVTrace& trace) {
    trace.validate();
    out << "# t0_index=" << trace.t0_index << "\n";
    out << "t,v,i\n";
    for (std::size_t k = 0; k < trace.size(); ++k) {
        out << fmt(trace.t[k]) << ',' << fmt(trace.v[k]) << ',' << fmt(trace.i[k]) << '\n';
    }
}

void export_trace(const IVTrace& trace, const std::string& path) {
    auto out = open_out(path);
    write_trace(out, trace);
    check_written(out, path);
}

void write_fq(std::ostream& out, const FluxChargeTrace& fq) {
    out << "# phi0=" << fmt(fq.phi0) << "\n";
    out << "# q0=" << fmt(fq.q0) << "\n";
    out << "t,phi,q\n";
    for (std::size_t k = 0; k < fq.size(); ++k) {
        out << fmt(fq.t[k]) << ',' << fmt(fq.phi[k]) << ',' << fmt(fq.q[k]) << '\n';
    }
}

void export_fq(const FluxChargeTrace& fq, const std::string& path) {
    auto out = open_out(path);
    write_fq(out, fq);
    check_written(out, path);
}

void export_plot_data(const IVTrace& trace, const FluxChargeTrace& fq, const BranchSegmentation& seg,
                      const std::array<BranchRoleInfo, 4>& roles, const std::string& prefix,
                      std::size_t max_points_per_cycle) {
    const std::string iv_path = prefix + "_iv.csv";
    const std::string fq_path = prefix + "_fq.csv";
    auto iv = open_out(iv_path);
    auto fqo = open_out(fq_path);
    iv << "cycle,branch,role,v,i\n";
    fqo << "cycle,branch,role,q,phi\n";

    std::size_t per_cycle = 0;
    for (const auto& s : seg.segments) {
        if (s.cycle == 1) per_cycle += s.size();
    }
    const std::size_t stride = std::max<std::size_t>(1, (per_cycle + max_points_per_cycle - 1) /
                                                            std::max<std::size_t>(1, max_points_per_cycle));
    for (const auto& s : seg.segments) {
        const std::string tag = std::to_string(s.cycle) + "," + branch_name(s.branch) + "," +
                                role_name(roles[static_cast<std::size_t>(s.branch) - 1].role) + ",";
        for (std::size_t k = s.begin; k < s.end; ++k) {
            // Always keep the first and last sample of a segment so branch ends meet.
            if ((k - s.begin) % stride != 0 && k + 1 != s.end) continue;
            const std::size_t a = seg.offset + k;
            iv << tag << fmt(trace.v[a]) << ',' << fmt(trace.i[a]) << '\n';
            fqo << tag << fmt(fq.q[k]) << ',' << fmt(fq.phi[k]) << '\n';
        }
    }
    check_written(iv, iv_path);
    check_written(fqo, fq_path);
}

void write_text_file(const std::string& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    check_written(out, path);
}

}  // namespace memristor
