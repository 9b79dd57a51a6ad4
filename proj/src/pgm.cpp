#include "iris/pgm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace iris {

namespace {

// Reads the next header token, skipping whitespace and '#' comment lines.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_pgm: cannot open " + path);

    if (next_token(in) != "P5")
        throw IoError("read_pgm: not a binary P5 PGM: " + path);
    int width = 0, height = 0, maxval = 0;
    try {
        width = std::stoi(next_token(in));
        height = std::stoi(next_token(in));
        maxval = std::stoi(next_token(in));
    } catch (const std::exception&) {
        throw IoError("read_pgm: malformed header in " + path);
    }
    if (width < 1 || height < 1)
        throw IoError("read_pgm: bad dimensions in " + path);
    if (maxval != 255)
        throw IoError("read_pgm: only 8-bit (maxval 255) PGM supported: " + path);

    std::vector<uint8_t> raw(static_cast<size_t>(width) * height);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
        throw IoError("read_pgm: truncated pixel data in " + path);

    std::vector<double> pix(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) pix[i] = raw[i] / 255.0;
    return GrayImage(width, height, std::move(pix));
}

void write_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_pgm: cannot open " + path);
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    std::vector<uint8_t> raw(img.size());
    const auto& data = img.field().data();
    for (size_t i = 0; i < data.size(); ++i)
        raw[i] = static_cast<uint8_t>(std::lround(data[i] * 255.0));
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("write_pgm: write failed for " + path);
}

}  // namespace iris
