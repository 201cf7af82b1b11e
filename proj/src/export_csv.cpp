#include "dephase/export_csv.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "dephase/errors.hpp"

namespace dephase {
namespace {

void append_double(std::string& out, double v) {
    std::array<char, 40> buf;
    // 16 fractional digits = 17 significant: lossless for binary64.
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::scientific, 16);
    out.append(buf.data(), res.ptr);
}

double parse_double(std::string_view field, const std::string& path) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw IoError("malformed numeric field in " + path);
    return v;
}

} // namespace

const std::string& csv_header() {
    static const std::string header =
        "t,re_gamma,im_gamma,abs_gamma,q_mean,c_coherent,w_mean,"
        "trace_distance,sigma,identity_residual";
    return header;
}

void export_csv(const Trajectory& traj, const std::string& path) {
    std::string out = csv_header();
    out.push_back('\n');
    for (const TrajectoryRow& r : traj.rows) {
        append_double(out, r.t);
        out.push_back(',');
        append_double(out, r.gamma.real());
        out.push_back(',');
        append_double(out, r.gamma.imag());
        out.push_back(',');
        append_double(out, r.abs_gamma);
        out.push_back(',');
        append_double(out, r.q_mean);
        out.push_back(',');
        append_double(out, r.c_coherent);
        out.push_back(',');
        append_double(out, r.w_mean);
        out.push_back(',');
        append_double(out, r.trace_distance);
        out.push_back(',');
        append_double(out, r.sigma);
        out.push_back(',');
        append_double(out, r.identity_residual);
        out.push_back('\n');
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed: " + path);
}

std::vector<TrajectoryRow> read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(f, line) || line != csv_header())
        throw IoError("missing or unexpected header in " + path);

    std::vector<TrajectoryRow> rows;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::array<double, 10> v{};
        std::size_t start = 0;
        for (std::size_t col = 0; col < 10; ++col) {
            const std::size_t comma = line.find(',', start);
            const bool last = (col == 9);
            if (last != (comma == std::string::npos))
                throw IoError("wrong field count in " + path);
            const std::size_t end = last ? line.size() : comma;
            v[col] = parse_double(
                std::string_view(line).substr(start, end - start), path);
            start = end + 1;
        }
        TrajectoryRow r;
        r.t = v[0];
        r.gamma = {v[1], v[2]};
        r.abs_gamma = v[3];
        r.q_mean = v[4];
        r.c_coherent = v[5];
        r.w_mean = v[6];
        r.trace_distance = v[7];
        r.sigma = v[8];
        r.identity_residual = v[9];
        rows.push_back(r);
    }
    return rows;
}

} // namespace dephase
