#include "latefuse/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string_view>
#include <system_error>

namespace latefuse {

namespace {

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", v);
    return buf;
}

std::string fmt_rate(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& path, int line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view field, const std::string& path, int line_no,
                    const std::string& column) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        fail(path, line_no, "column " + column + ": cannot parse number `" +
                                std::string(field) + "`");
    }
    return value;
}

long parse_long(std::string_view field, const std::string& path, int line_no,
                const std::string& column) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        fail(path, line_no, "column " + column + ": cannot parse integer `" +
                                std::string(field) + "`");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = line.find(',', begin);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(begin));
            break;
        }
        fields.push_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
    return fields;
}

// `# key=value key=value ...`
std::map<std::string, std::string> parse_metadata(std::string_view line) {
    std::map<std::string, std::string> meta;
    std::size_t pos = 1;  // skip '#'
    while (pos < line.size()) {
        while (pos < line.size() && line[pos] == ' ') {
            ++pos;
        }
        const std::size_t space = line.find(' ', pos);
        const std::string_view token =
            line.substr(pos, space == std::string_view::npos ? line.size() - pos : space - pos);
        const std::size_t eq = token.find('=');
        if (eq != std::string_view::npos && eq > 0) {
            meta[std::string(token.substr(0, eq))] = std::string(token.substr(eq + 1));
        }
        if (space == std::string_view::npos) {
            break;
        }
        pos = space + 1;
    }
    return meta;
}

struct CsvReader {
    std::string path;
    std::ifstream in;
    std::map<std::string, std::string> meta;
    std::string header;
    int line_no = 0;

    explicit CsvReader(const std::string& p) : path(p), in(p) {
        if (!in) {
            throw std::runtime_error("cannot open " + p);
        }
        std::string line;
        if (!std::getline(in, line)) {
            throw std::runtime_error(p + ": empty file");
        }
        ++line_no;
        if (line.empty() || line[0] != '#') {
            fail(path, line_no, "expected `# key=value ...` metadata comment");
        }
        meta = parse_metadata(line);
        if (!std::getline(in, header)) {
            throw std::runtime_error(p + ": missing column header");
        }
        ++line_no;
    }

    double meta_rate() {
        const auto it = meta.find("rate_hz");
        if (it == meta.end()) {
            fail(path, 1, "metadata is missing rate_hz");
        }
        const double rate = parse_double(it->second, path, 1, "rate_hz");
        if (rate <= 0.0) {
            fail(path, 1, "rate_hz must be > 0, got " + it->second);
        }
        return rate;
    }

    std::string meta_str(const std::string& key) {
        const auto it = meta.find(key);
        return it == meta.end() ? std::string() : it->second;
    }

    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty() || line[0] == '#') {
                continue;
            }
            return true;
        }
        return false;
    }
};

std::string score_header() {
    std::string h = "frame";
    for (int k = 0; k < kNumClasses; ++k) {
        h += ",score_" + std::to_string(k);
    }
    return h;
}

}  // namespace

ScoreTrack load_score_track(const std::string& path, const std::string& model_id) {
    CsvReader reader(path);
    if (reader.header != score_header()) {
        fail(path, 2, "bad header, expected `" + score_header() + "`");
    }
    ScoreTrack track;
    track.model_id = model_id.empty() ? reader.meta_str("model") : model_id;
    track.video_id = reader.meta_str("video");
    track.rate_hz = reader.meta_rate();
    track.normalized = reader.meta_str("normalized") == "1";

    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line);
        if (fields.size() != kNumClasses + 1) {
            fail(path, reader.line_no,
                 "expected " + std::to_string(kNumClasses + 1) + " columns, got " +
                     std::to_string(fields.size()));
        }
        const long frame = parse_long(fields[0], path, reader.line_no, "frame");
        if (frame != static_cast<long>(track.num_frames())) {
            fail(path, reader.line_no,
                 "frame index " + std::to_string(frame) + " out of order");
        }
        for (int k = 0; k < kNumClasses; ++k) {
            const std::string column = "score_" + std::to_string(k);
            const double v = parse_double(fields[k + 1], path, reader.line_no, column);
            if (!(v >= 0.0)) {
                fail(path, reader.line_no, "column " + column + ": negative score " +
                                               std::string(fields[k + 1]));
            }
            track.scores.push_back(v);
        }
    }
    track.validate();
    return track;
}

void write_score_track(const std::string& path, const ScoreTrack& track) {
    track.validate();
    std::string out = "# model=" + track.model_id + " video=" + track.video_id +
                      " rate_hz=" + fmt_rate(track.rate_hz) +
                      " normalized=" + (track.normalized ? "1" : "0") + "\n";
    out += score_header();
    out += '\n';
    const std::size_t frames = track.num_frames();
    for (std::size_t t = 0; t < frames; ++t) {
        out += std::to_string(t);
        for (int k = 0; k < kNumClasses; ++k) {
            out += ',';
            out += fmt_value(track.score(t, k));
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

LabelTrack load_label_track(const std::string& path) {
    CsvReader reader(path);
    if (reader.header != "frame,label") {
        fail(path, 2, "bad header, expected `frame,label`");
    }
    LabelTrack track;
    track.video_id = reader.meta_str("video");
    track.rate_hz = reader.meta_rate();

    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line);
        if (fields.size() != 2) {
            fail(path, reader.line_no, "expected 2 columns, got " +
                                           std::to_string(fields.size()));
        }
        const long frame = parse_long(fields[0], path, reader.line_no, "frame");
        if (frame != static_cast<long>(track.labels.size())) {
            fail(path, reader.line_no,
                 "frame index " + std::to_string(frame) + " out of order");
        }
        const long label = parse_long(fields[1], path, reader.line_no, "label");
        if (label != kIgnoreLabel && (label < 0 || label >= kNumClasses)) {
            fail(path, reader.line_no, "label " + std::to_string(label) +
                                           " outside {-1, 0.." +
                                           std::to_string(kNumClasses - 1) + "}");
        }
        track.labels.push_back(static_cast<int>(label));
    }
    track.validate();
    return track;
}

void write_label_track(const std::string& path, const LabelTrack& track) {
    track.validate();
    std::string out = "# video=" + track.video_id + " rate_hz=" + fmt_rate(track.rate_hz) + "\n";
    out += "frame,label\n";
    for (std::size_t t = 0; t < track.labels.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += std::to_string(track.labels[t]);
        out += '\n';
    }
    write_file_atomic(path, out);
}

FeatureTrack load_feature_track(const std::string& path) {
    CsvReader reader(path);
    FeatureTrack track;
    track.video_id = reader.meta_str("video");
    track.rate_hz = reader.meta_rate();
    const std::string dim_str = reader.meta_str("dim");
    if (dim_str.empty()) {
        fail(path, 1, "metadata is missing dim");
    }
    const long dim = parse_long(dim_str, path, 1, "dim");
    if (dim <= 0) {
        fail(path, 1, "dim must be > 0");
    }
    track.dim = static_cast<std::size_t>(dim);

    std::string expected = "frame";
    for (long d = 0; d < dim; ++d) {
        expected += ",f_" + std::to_string(d);
    }
    if (reader.header != expected) {
        fail(path, 2, "bad header for dim=" + dim_str);
    }

    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line);
        if (fields.size() != static_cast<std::size_t>(dim) + 1) {
            fail(path, reader.line_no,
                 "expected " + std::to_string(dim + 1) + " columns, got " +
                     std::to_string(fields.size()));
        }
        const long frame = parse_long(fields[0], path, reader.line_no, "frame");
        if (frame != static_cast<long>(track.num_frames())) {
            fail(path, reader.line_no,
                 "frame index " + std::to_string(frame) + " out of order");
        }
        for (long d = 0; d < dim; ++d) {
            track.features.push_back(
                parse_double(fields[d + 1], path, reader.line_no, "f_" + std::to_string(d)));
        }
    }
    track.validate();
    return track;
}

void write_feature_track(const std::string& path, const FeatureTrack& track) {
    track.validate();
    std::string out = "# video=" + track.video_id + " rate_hz=" + fmt_rate(track.rate_hz) +
                      " dim=" + std::to_string(track.dim) + "\n";
    out += "frame";
    for (std::size_t d = 0; d < track.dim; ++d) {
        out += ",f_" + std::to_string(d);
    }
    out += '\n';
    const std::size_t frames = track.num_frames();
    for (std::size_t t = 0; t < frames; ++t) {
        out += std::to_string(t);
        const double* row = track.frame(t);
        for (std::size_t d = 0; d < track.dim; ++d) {
            out += ',';
            out += fmt_value(row[d]);
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

std::vector<PooledSegment> load_pooled_segments(const std::string& path,
                                                std::string* video_id, double* rate_hz,
                                                std::size_t* dim_out) {
    CsvReader reader(path);
    const std::string dim_str = reader.meta_str("dim");
    if (dim_str.empty()) {
        fail(path, 1, "metadata is missing dim");
    }
    const long dim = parse_long(dim_str, path, 1, "dim");
    if (dim <= 0) {
        fail(path, 1, "dim must be > 0");
    }
    if (video_id != nullptr) {
        *video_id = reader.meta_str("video");
    }
    if (rate_hz != nullptr) {
        *rate_hz = reader.meta_rate();
    }
    if (dim_out != nullptr) {
        *dim_out = static_cast<std::size_t>(dim);
    }

    std::vector<PooledSegment> segments;
    std::string line;
    while (reader.next(line)) {
        const auto fields = split(line);
        if (fields.size() != static_cast<std::size_t>(2 * dim) + 3) {
            fail(path, reader.line_no,
                 "expected " + std::to_string(2 * dim + 3) + " columns, got " +
                     std::to_string(fields.size()));
        }
        PooledSegment seg;
        seg.start_s = parse_double(fields[0], path, reader.line_no, "start_s");
        seg.end_s = parse_double(fields[1], path, reader.line_no, "end_s");
        const long label = parse_long(fields[2], path, reader.line_no, "label");
        if (label != kIgnoreLabel && (label < 0 || label >= kNumClasses)) {
            fail(path, reader.line_no, "label " + std::to_string(label) + " out of range");
        }
        seg.label = static_cast<int>(label);
        seg.pooled.reserve(2 * dim);
        for (long d = 0; d < 2 * dim; ++d) {
            seg.pooled.push_back(
                parse_double(fields[d + 3], path, reader.line_no, "p_" + std::to_string(d)));
        }
        segments.push_back(std::move(seg));
    }
    return segments;
}

void write_pooled_segments(const std::string& path,
                           const std::vector<PooledSegment>& segments,
                           const std::string& video_id, double rate_hz, std::size_t dim) {
    std::string out = "# video=" + video_id + " rate_hz=" + fmt_rate(rate_hz) +
                      " dim=" + std::to_string(dim) + "\n";
    out += "start_s,end_s,label";
    for (std::size_t d = 0; d < 2 * dim; ++d) {
        out += ",p_" + std::to_string(d);
    }
    out += '\n';
    for (const PooledSegment& seg : segments) {
        if (seg.pooled.size() != 2 * dim) {
            throw std::invalid_argument("pooled segment has dim " +
                                        std::to_string(seg.pooled.size()) + ", expected " +
                                        std::to_string(2 * dim));
        }
        out += fmt_value(seg.start_s);
        out += ',';
        out += fmt_value(seg.end_s);
        out += ',';
        out += std::to_string(seg.label);
        for (const double v : seg.pooled) {
            out += ',';
            out += fmt_value(v);
        }
        out += '\n';
    }
    write_file_atomic(path, out);
}

bool is_label_file(const std::string& path) {
    CsvReader reader(path);
    return reader.header == "frame,label";
}

void write_file_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) {
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot move " + tmp.string() + " to " + path + ": " +
                                 ec.message());
    }
}

}  // namespace latefuse
