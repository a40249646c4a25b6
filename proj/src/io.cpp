#include "simr/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "simr/errors.hpp"

namespace simr {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw ConfigError("not a decimal number: '" + text + "'");
    return value;
}

GridFunction read_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open vector file: " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        values.push_back(parse_double(line));
    }
    if (values.empty()) throw ConfigError("empty vector file: " + path);
    return GridFunction(std::move(values));
}

void write_vector(const std::string& path, const GridFunction& u) {
    std::string content;
    for (double v : u) {
        content += format_double(v);
        content += '\n';
    }
    write_text_file(path, content);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace simr
