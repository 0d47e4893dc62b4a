#include "pdmsoliton/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "pdmsoliton/error.hpp"

namespace pdmsoliton {

void write_csv(std::ostream& os, const SampledField& f)
{
    const auto old_flags = os.flags();
    const auto old_precision = os.precision();
    os << "x,value\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t i = 0; i < f.size(); ++i) {
        os << f.x(i) << ',' << f[i] << '\n';
    }
    os.flags(old_flags);
    os.precision(old_precision);
}

std::string to_csv(const SampledField& f)
{
    std::ostringstream os;
    write_csv(os, f);
    return os.str();
}

SampledField parse_csv(std::string_view text, GridKind kind)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<double> xs;
    std::vector<double> vs;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (xs.empty() && vs.empty() && line.rfind("x,", 0) == 0) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw IoError("csv line " + std::to_string(line_no) + ": expected 'x,value'");
        }
        try {
            std::size_t used = 0;
            const std::string xs_str = line.substr(0, comma);
            const std::string vs_str = line.substr(comma + 1);
            xs.push_back(std::stod(xs_str, &used));
            vs.push_back(std::stod(vs_str, &used));
        } catch (const std::exception&) {
            throw IoError("csv line " + std::to_string(line_no) + ": malformed number");
        }
    }
    if (xs.size() < Grid::min_points) {
        throw IoError("csv holds too few samples for a grid");
    }
    const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double step = xs[i] - xs[i - 1];
        if (!(std::abs(step - h) <= 1e-6 * std::abs(h))) {
            throw IoError("csv abscissae are not uniformly spaced");
        }
    }
    const double xmax = kind == GridKind::periodic ? xs.back() + h : xs.back();
    try {
        return SampledField(Grid::uniform(xs.front(), xmax, xs.size(), kind), std::move(vs));
    } catch (const DomainError& e) {
        throw IoError(std::string("csv does not describe a valid field: ") + e.what());
    }
}

SampledField read_csv(const std::filesystem::path& path, GridKind kind)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), kind);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string());
        }
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename onto " + path.string());
    }
}

} // namespace pdmsoliton
