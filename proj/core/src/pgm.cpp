#include "segseed/pgm.hpp"

#include <cctype>
#include <fstream>
#include <string>
#include <vector>

namespace segseed {

namespace {

struct Cursor {
    const std::string& bytes;
    std::size_t pos = 0;
    const std::filesystem::path& path;

    [[noreturn]] void fail(const std::string& what) const {
        throw DataError(path.string() + ": " + what);
    }

    bool eof() const { return pos >= bytes.size(); }

    // PGM whitespace: blanks, and '#' comments running to end of line.
    void skip_separators() {
        while (!eof()) {
            char c = bytes[pos];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else if (c == '#') {
                while (!eof() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    int read_int(const char* field) {
        skip_separators();
        if (eof()) fail(std::string("truncated header: missing ") + field);
        if (!std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            fail(std::string("malformed header: expected digit in ") + field);
        }
        long value = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1 << 20) fail(std::string("malformed header: ") + field + " too large");
            ++pos;
        }
        return static_cast<int>(value);
    }
};

}  // namespace

Image2D load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError(path.string() + ": cannot open file");
    }
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());

    Cursor cur{bytes, 0, path};
    if (bytes.size() < 2) cur.fail("truncated header: missing magic");
    if (bytes[0] != 'P' || bytes[1] != '5') {
        cur.fail("bad magic, expected \"P5\"");
    }
    cur.pos = 2;

    int width = cur.read_int("width");
    int height = cur.read_int("height");
    int maxval = cur.read_int("maxval");
    if (width < 1 || height < 1) cur.fail("malformed header: non-positive dimensions");
    if (maxval != 255) {
        cur.fail("unsupported maxval " + std::to_string(maxval) + ", expected 255");
    }

    // Exactly one whitespace byte separates the header from the payload.
    if (cur.eof() || !std::isspace(static_cast<unsigned char>(bytes[cur.pos]))) {
        cur.fail("malformed header: missing separator before pixel data");
    }
    ++cur.pos;

    std::size_t expected = static_cast<std::size_t>(width) * height;
    if (bytes.size() - cur.pos < expected) {
        cur.fail("truncated payload: expected " + std::to_string(expected) +
                 " pixel bytes, got " + std::to_string(bytes.size() - cur.pos));
    }
    std::vector<std::uint8_t> data(bytes.begin() + cur.pos,
                                   bytes.begin() + cur.pos + expected);
    return Image2D(width, height, std::move(data));
}

void save_pgm(const Image2D& image, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError(path.string() + ": cannot open for writing");
    }
    out << "P5\n" << image.width() << " " << image.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.data().data()),
              static_cast<std::streamsize>(image.data().size()));
    if (!out) {
        throw DataError(path.string() + ": write failed");
    }
}

LabelMap load_label_pgm(const std::filesystem::path& path) {
    Image2D raw = load_pgm(path);
    for (std::uint8_t v : raw.data()) {
        if (v > 3) {
            throw DataError(path.string() + ": pixel value " + std::to_string(v) +
                            " is not a class code {0..3}");
        }
    }
    return LabelMap(raw.width(), raw.height(), raw.data());
}

void save_label_pgm(const LabelMap& labels, const std::filesystem::path& path) {
    save_pgm(Image2D(labels.width(), labels.height(), labels.labels()), path);
}

}  // namespace segseed
