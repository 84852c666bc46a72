#include "deam/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "deam/errors.hpp"
#include "deam/rng.hpp"

namespace deam {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::uint32_t read_u32_be(std::istream& in, const std::string& path, std::size_t offset) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (!in) {
        throw IoError(path + ": truncated file at offset " + std::to_string(offset));
    }
    return (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
           (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
}

void write_u32_be(std::ostream& out, std::uint32_t v) {
    const unsigned char buf[4] = {static_cast<unsigned char>(v >> 24),
                                  static_cast<unsigned char>(v >> 16),
                                  static_cast<unsigned char>(v >> 8),
                                  static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(buf), 4);
}

std::ifstream open_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open file");
    return in;
}

} // namespace

void Dataset::validate() const {
    if (n < 1) throw std::invalid_argument("Dataset '" + name + "': n must be >= 1");
    if (d < 1) throw std::invalid_argument("Dataset '" + name + "': d must be >= 1");
    if (num_classes < 1) {
        throw std::invalid_argument("Dataset '" + name + "': num_classes must be >= 1");
    }
    if (features.size() != n * d || labels.size() != n) {
        throw std::invalid_argument("Dataset '" + name + "': storage sizes inconsistent");
    }
    for (double x : features) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("Dataset '" + name + "': non-finite feature value");
        }
    }
    for (int y : labels) {
        if (y < 0 || static_cast<std::size_t>(y) >= num_classes) {
            throw std::invalid_argument("Dataset '" + name + "': label " + std::to_string(y) +
                                        " outside [0, " + std::to_string(num_classes) + ")");
        }
    }
}

Dataset gen_blobs(std::size_t n, std::size_t d, std::size_t num_classes, double separation,
                  std::uint64_t seed) {
    if (num_classes < 2) throw std::invalid_argument("gen_blobs: need at least 2 classes");
    if (n < num_classes) throw std::invalid_argument("gen_blobs: need n >= num_classes");
    if (d < 1) throw std::invalid_argument("gen_blobs: d must be >= 1");
    if (!(separation > 0.0)) throw std::invalid_argument("gen_blobs: separation must be > 0");

    // Cluster means sit on coordinate axes, `separation` from the origin;
    // classes beyond d wrap to the negative axes with a growing radius.
    std::vector<std::vector<double>> means(num_classes, std::vector<double>(d, 0.0));
    for (std::size_t c = 0; c < num_classes; ++c) {
        const std::size_t axis = c % d;
        const std::size_t ring = c / d;
        const double sign = (ring % 2 == 0) ? 1.0 : -1.0;
        means[c][axis] = sign * separation * static_cast<double>(1 + ring / 2);
    }

    Dataset out;
    out.name = "blobs";
    out.n = n;
    out.d = d;
    out.num_classes = num_classes;
    out.features.resize(n * d);
    out.labels.resize(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = i % num_classes;
        out.labels[i] = static_cast<int>(c);
        for (std::size_t j = 0; j < d; ++j) {
            out.features[i * d + j] = means[c][j] + rng.normal();
        }
    }
    return out;
}

Dataset load_idx(const std::filesystem::path& images_path,
                 const std::filesystem::path& labels_path, std::optional<std::size_t> limit) {
    auto img = open_binary(images_path);
    const std::uint32_t img_magic = read_u32_be(img, images_path.string(), 0);
    if (img_magic != kImagesMagic) {
        std::ostringstream msg;
        msg << images_path.string() << ": bad magic 0x" << std::hex << img_magic
            << " at offset 0 (expected 0x" << kImagesMagic << ")";
        throw IoError(msg.str());
    }
    const std::uint32_t n_images = read_u32_be(img, images_path.string(), 4);
    const std::uint32_t rows = read_u32_be(img, images_path.string(), 8);
    const std::uint32_t cols = read_u32_be(img, images_path.string(), 12);

    auto lab = open_binary(labels_path);
    const std::uint32_t lab_magic = read_u32_be(lab, labels_path.string(), 0);
    if (lab_magic != kLabelsMagic) {
        std::ostringstream msg;
        msg << labels_path.string() << ": bad magic 0x" << std::hex << lab_magic
            << " at offset 0 (expected 0x" << kLabelsMagic << ")";
        throw IoError(msg.str());
    }
    const std::uint32_t n_labels = read_u32_be(lab, labels_path.string(), 4);

    if (n_images != n_labels) {
        throw IoError(images_path.string() + ": image count " + std::to_string(n_images) +
                      " does not match label count " + std::to_string(n_labels) + " in " +
                      labels_path.string());
    }

    std::size_t n = n_images;
    if (limit) {
        if (*limit < 1) throw std::invalid_argument("load_idx: limit must be >= 1");
        n = std::min<std::size_t>(n, *limit);
    }
    if (n < 1) throw IoError(images_path.string() + ": dataset contains no samples");

    const std::size_t d = static_cast<std::size_t>(rows) * cols;
    if (d < 1) throw IoError(images_path.string() + ": zero-sized images");

    Dataset out;
    out.name = images_path.filename().string();
    out.n = n;
    out.d = d;
    out.features.resize(n * d);
    out.labels.resize(n);

    std::vector<unsigned char> pixel_buf(d);
    for (std::size_t i = 0; i < n; ++i) {
        img.read(reinterpret_cast<char*>(pixel_buf.data()), static_cast<std::streamsize>(d));
        if (!img) {
            throw IoError(images_path.string() + ": truncated file at offset " +
                          std::to_string(16 + i * d));
        }
        for (std::size_t j = 0; j < d; ++j) {
            out.features[i * d + j] = static_cast<double>(pixel_buf[j]) / 255.0;
        }
    }

    std::vector<unsigned char> label_buf(n);
    lab.read(reinterpret_cast<char*>(label_buf.data()), static_cast<std::streamsize>(n));
    if (!lab) {
        throw IoError(labels_path.string() + ": truncated file at offset 8");
    }
    int max_label = 0;
    for (std::size_t i = 0; i < n; ++i) {
        out.labels[i] = static_cast<int>(label_buf[i]);
        max_label = std::max(max_label, out.labels[i]);
    }
    out.num_classes = static_cast<std::size_t>(max_label) + 1;
    // MNIST-style files always carry 10 classes; a truncated subset may not
    // contain every digit, so the class count is whatever the labels span.
    out.validate();
    return out;
}

void save_idx(const Dataset& data, const std::filesystem::path& images_path,
              const std::filesystem::path& labels_path) {
    data.validate();
    if (data.num_classes > 256) {
        throw std::invalid_argument("save_idx: labels must fit in one byte");
    }
    std::ofstream img(images_path, std::ios::binary);
    if (!img) throw IoError(images_path.string() + ": cannot open file for writing");
    write_u32_be(img, kImagesMagic);
    write_u32_be(img, static_cast<std::uint32_t>(data.n));
    write_u32_be(img, 1);
    write_u32_be(img, static_cast<std::uint32_t>(data.d));
    std::vector<unsigned char> buf(data.d);
    for (std::size_t i = 0; i < data.n; ++i) {
        for (std::size_t j = 0; j < data.d; ++j) {
            const double x = data.feature(i, j);
            if (!(x >= 0.0 && x <= 1.0)) {
                throw std::invalid_argument("save_idx: feature outside [0,1] at sample " +
                                            std::to_string(i));
            }
            buf[j] = static_cast<unsigned char>(std::lround(x * 255.0));
        }
        img.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(data.d));
    }
    if (!img) throw IoError(images_path.string() + ": write failed");

    std::ofstream lab(labels_path, std::ios::binary);
    if (!lab) throw IoError(labels_path.string() + ": cannot open file for writing");
    write_u32_be(lab, kLabelsMagic);
    write_u32_be(lab, static_cast<std::uint32_t>(data.n));
    for (std::size_t i = 0; i < data.n; ++i) {
        const unsigned char y = static_cast<unsigned char>(data.labels[i]);
        lab.write(reinterpret_cast<const char*>(&y), 1);
    }
    if (!lab) throw IoError(labels_path.string() + ": write failed");
}

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open file");

    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };

    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split(line);
    std::size_t label_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == label_column) label_idx = j;
    }
    if (label_idx == header.size()) {
        throw IoError(path.string() + ": label column '" + label_column + "' not in header");
    }

    Dataset out;
    out.name = path.filename().string();
    out.d = header.size() - 1;
    if (out.d < 1) throw IoError(path.string() + ": no feature columns");

    int max_label = 0;
    std::size_t row_no = 1; // header is row 1
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() != header.size()) {
            throw IoError(path.string() + ": row " + std::to_string(row_no) + " has " +
                          std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(header.size()));
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            std::size_t pos = 0;
            double value = 0.0;
            try {
                value = std::stod(cells[j], &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != cells[j].size() || cells[j].empty()) {
                throw IoError(path.string() + ": non-numeric cell '" + cells[j] + "' at row " +
                              std::to_string(row_no));
            }
            if (j == label_idx) {
                const long y = std::lround(value);
                if (static_cast<double>(y) != value || y < 0) {
                    throw IoError(path.string() + ": label '" + cells[j] + "' at row " +
                                  std::to_string(row_no) + " is not a non-negative integer");
                }
                out.labels.push_back(static_cast<int>(y));
                max_label = std::max(max_label, static_cast<int>(y));
            } else {
                out.features.push_back(value);
            }
        }
    }
    out.n = out.labels.size();
    if (out.n < 1) throw IoError(path.string() + ": no data rows");
    out.num_classes = static_cast<std::size_t>(max_label) + 1;
    out.validate();
    return out;
}

} // namespace deam
