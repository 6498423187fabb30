#include "gaitseg/csv_io.hpp"

#include "gaitseg/error.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gaitseg {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (cell.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw ParseError(line, column, "invalid number");
    return v;
}

struct Table {
    std::vector<std::vector<double>> columns;  // columns[0] is t
};

Table parse_table(std::string_view text, std::string_view header) {
    const auto expected = split_fields(header);
    std::size_t pos = 0;
    auto next_line = [&](std::string_view& line) {
        if (pos >= text.size()) return false;
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = nl + 1;
        return true;
    };

    std::string_view line;
    if (!next_line(line)) throw HeaderMismatch(std::string(expected.front()), "file is empty");
    const auto got = split_fields(line);
    for (std::size_t c = 0; c < expected.size(); ++c) {
        if (c >= got.size())
            throw HeaderMismatch(std::string(expected[c]), "column missing from header");
        if (got[c] != expected[c])
            throw HeaderMismatch(std::string(expected[c]),
                                 fmt::format("expected at position {}, found '{}'", c + 1, got[c]));
    }
    if (got.size() > expected.size())
        throw HeaderMismatch(std::string(got[expected.size()]), "unexpected extra column");

    Table t;
    t.columns.resize(expected.size());
    std::size_t line_no = 1;
    while (next_line(line)) {
        ++line_no;
        if (line.empty()) {
            if (pos >= text.size()) break;  // trailing newline
            throw ParseError(line_no, 1, "empty line");
        }
        const auto cells = split_fields(line);
        if (cells.size() != expected.size())
            throw ParseError(line_no, std::min(cells.size(), expected.size()) + 1,
                             fmt::format("expected {} fields, found {}", expected.size(),
                                         cells.size()));
        for (std::size_t c = 0; c < cells.size(); ++c)
            t.columns[c].push_back(parse_cell(cells[c], line_no, c + 1));
    }
    if (t.columns.front().size() < 2) throw SeriesTooShort(t.columns.front().size(), 2);
    return t;
}

void check_time_column(const std::vector<double>& t, double fs) {
    if (!(fs > 0.0) || !std::isfinite(fs)) throw ConfigError("sample rate must be positive");
    const double period = 1.0 / fs;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double dt = t[i] - t[i - 1];
        if (std::abs(dt - period) > 0.01 * period)
            throw ParseError(i + 2, 1,
                             fmt::format("time step {} deviates from 1/fs = {} by more than 1%",
                                         dt, period));
    }
}

double span_s(const TimeSeries& s) {
    return static_cast<double>(s.size() - 1) / s.sample_rate_hz();
}

void append_row(std::string& out, double t, const std::vector<const TimeSeries*>& cols,
                std::size_t i) {
    fmt::format_to(std::back_inserter(out), "{}", t);
    for (const TimeSeries* c : cols) fmt::format_to(std::back_inserter(out), ",{}", (*c)[i]);
    out.push_back('\n');
}

}  // namespace

KinematicsTable parse_kinematics_csv(std::string_view text, double fs_kin_hz) {
    Table t = parse_table(text, kKinematicsHeader);
    check_time_column(t.columns[0], fs_kin_hz);
    auto col = [&](std::size_t c, std::string_view name) {
        return TimeSeries(std::move(t.columns[c]), fs_kin_hz, std::string(name));
    };
    return {col(1, "ax"), col(2, "ay"), col(3, "az"), col(4, "px"), col(5, "py"), col(6, "pz")};
}

EmgChannelSet parse_emg_csv(std::string_view text, double fs_emg_hz) {
    Table t = parse_table(text, kEmgHeader);
    check_time_column(t.columns[0], fs_emg_hz);
    EmgChannelSet emg;
    for (std::size_t c = 0; c < kCanonicalMuscles.size(); ++c) {
        std::string name(kCanonicalMuscles[c]);
        emg.add(name, TimeSeries(std::move(t.columns[c + 1]), fs_emg_hz, name));
    }
    return emg;
}

std::string format_columns_csv(const std::vector<std::string>& names,
                               const std::vector<const TimeSeries*>& columns) {
    std::string out = "t";
    for (const auto& n : names) out += "," + n;
    out.push_back('\n');
    if (columns.empty()) return out;
    const std::size_t n = columns.front()->size();
    const double fs = columns.front()->sample_rate_hz();
    for (std::size_t i = 0; i < n; ++i)
        append_row(out, static_cast<double>(i) / fs, columns, i);
    return out;
}

std::string format_kinematics_csv(const Recording& r) {
    std::vector<std::string> names;
    for (auto c : kKinematicColumns) names.emplace_back(c);
    return format_columns_csv(names, {&r.ax, &r.ay, &r.az, &r.px, &r.py, &r.pz});
}

std::string format_emg_csv(const EmgChannelSet& emg) {
    std::vector<std::string> names;
    std::vector<const TimeSeries*> cols;
    for (auto m : kCanonicalMuscles) {
        names.emplace_back(m);
        cols.push_back(&emg.channel(m));
    }
    return format_columns_csv(names, cols);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Recording read_recording(const std::filesystem::path& kin_csv,
                         const std::filesystem::path& emg_csv, double fs_kin_hz,
                         double fs_emg_hz) {
    KinematicsTable k = parse_kinematics_csv(read_text_file(kin_csv), fs_kin_hz);
    Recording r;
    r.emg = parse_emg_csv(read_text_file(emg_csv), fs_emg_hz);
    const double kin_s = span_s(k.az);
    const double emg_s = span_s(r.emg.channel(0));
    if (std::abs(kin_s - emg_s) > 0.5) throw DurationMismatch(kin_s, emg_s);
    r.ax = std::move(k.ax);
    r.ay = std::move(k.ay);
    r.az = std::move(k.az);
    r.px = std::move(k.px);
    r.py = std::move(k.py);
    r.pz = std::move(k.pz);
    return r;
}

Recording ingest(const std::filesystem::path& kin_csv, const std::filesystem::path& emg_csv,
                 double fs_kin_hz, double fs_emg_hz) {
    return synchronize(read_recording(kin_csv, emg_csv, fs_kin_hz, fs_emg_hz));
}

void write_recording(const Recording& native, const std::filesystem::path& kin_csv,
                     const std::filesystem::path& emg_csv) {
    write_text_file(kin_csv, format_kinematics_csv(native));
    write_text_file(emg_csv, format_emg_csv(native.emg));
}

}  // namespace gaitseg
