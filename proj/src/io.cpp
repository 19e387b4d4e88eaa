#include "kcmpc/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace kcmpc {

Dataset parse_points_text(const std::string& text, const std::string& source_name) {
    Dataset out;
    std::istringstream stream(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        Point p;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw usage_error(source_name + ":" + std::to_string(lineno) +
                                  ": cannot parse coordinate '" + tok + "'");
            if (!std::isfinite(v))
                throw usage_error(source_name + ":" + std::to_string(lineno) +
                                  ": non-finite coordinate '" + tok + "'");
            p.push_back(v);
        }
        if (p.empty()) continue;
        if (!out.empty() && p.size() != out.dim())
            throw usage_error(source_name + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(out.dim()) + " coordinates, got " +
                              std::to_string(p.size()));
        out.push_back(std::move(p));
    }
    if (out.empty()) throw usage_error(source_name + ": no points found");
    return out;
}

Dataset ingest_points(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw usage_error("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_points_text(buf.str(), path);
}

} // namespace kcmpc
