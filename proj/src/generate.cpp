#include "riot/generate.hpp"

#include <array>
#include <cmath>
#include <random>

#include "riot/error.hpp"

namespace riot::workflow {

namespace {

constexpr std::array<std::pair<Shape, std::string_view>, 7> shape_names{{
    {Shape::Montage, "montage-like"},
    {Shape::Epigenomics, "epigenomics-like"},
    {Shape::Inspiral, "inspiral-like"},
    {Shape::CyberShake, "cybershake-like"},
    {Shape::Sipht, "sipht-like"},
    {Shape::Pipeline, "pipeline"},
    {Shape::ForkJoin, "fork-join"},
}};

class Builder {
public:
    std::size_t add(std::string label) {
        labels_.push_back(std::move(label));
        return labels_.size() - 1;
    }

    void link(std::size_t from, std::size_t to) { edges_.emplace_back(from, to); }

    // Appends `count` tasks as a chain hanging off `after`; returns the last.
    std::size_t tail(std::size_t after, std::size_t count, std::string const& label) {
        for (std::size_t i = 0; i < count; ++i) {
            auto t = add(label);
            link(after, t);
            after = t;
        }
        return after;
    }

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }

    Workflow build(std::uint64_t seed, GeneratorConfig const& cfg) const {
        std::mt19937_64 rng(seed);
        auto log_uniform = [&rng](double lo, double hi) {
            std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
            return std::exp(u(rng));
        };
        std::vector<Task> tasks;
        tasks.reserve(labels_.size());
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            // Millisecond resolution keeps the JSON form short.
            double w = std::round(log_uniform(cfg.min_workload, cfg.max_workload) * 1000.0) / 1000.0;
            tasks.push_back(Task{"t" + std::to_string(i), w, labels_[i], false});
        }
        std::vector<DataEdge> edges;
        edges.reserve(edges_.size());
        for (auto const& [from, to] : edges_) {
            double bytes = std::round(log_uniform(cfg.min_bytes, cfg.max_bytes));
            edges.push_back({tasks[from].id, tasks[to].id, bytes});
        }
        return validate(std::move(tasks), std::move(edges));
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Splits `total` items into `parts` near-equal shares, larger shares first.
std::vector<std::size_t> split(std::size_t total, std::size_t parts) {
    std::vector<std::size_t> out(parts, total / parts);
    for (std::size_t i = 0; i < total % parts; ++i) ++out[i];
    return out;
}

void build_pipeline(Builder& b, std::size_t n) {
    auto first = b.add("stage");
    b.tail(first, n - 1, "stage");
}

void build_fork_join(Builder& b, std::size_t n) {
    auto fork = b.add("fork");
    std::vector<std::size_t> mid;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        mid.push_back(b.add("work"));
        b.link(fork, mid.back());
    }
    auto join = b.add("join");
    for (auto m : mid) b.link(m, join);
}

// Projections feed pairwise difference fits, a global fit join, background
// correction per projection, then a serial mosaic tail.
void build_montage(Builder& b, std::size_t n) {
    std::size_t const k = std::max<std::size_t>(2, (n - 6) / 3);
    std::size_t const m = n - 6 - 2 * k;
    std::vector<std::size_t> proj;
    for (std::size_t i = 0; i < k; ++i) proj.push_back(b.add("mProjectPP"));
    std::vector<std::size_t> diff;
    for (std::size_t d = 0; d < m; ++d) {
        diff.push_back(b.add("mDiffFit"));
        b.link(proj[d % k], diff.back());
        b.link(proj[(d + 1) % k], diff.back());
    }
    auto concat = b.add("mConcatFit");
    for (auto d : diff) b.link(d, concat);
    auto model = b.add("mBgModel");
    b.link(concat, model);
    auto table = b.add("mImgtbl");
    for (std::size_t i = 0; i < k; ++i) {
        auto bg = b.add("mBackground");
        b.link(model, bg);
        b.link(proj[i], bg);
        b.link(bg, table);
    }
    auto add = b.add("mAdd");
    b.link(table, add);
    auto shrink = b.add("mShrink");
    b.link(add, shrink);
    auto jpeg = b.add("mJPEG");
    b.link(shrink, jpeg);
}

// One split fanning out to parallel filter/convert/map lanes, merged and indexed.
void build_epigenomics(Builder& b, std::size_t n) {
    std::size_t const lane_tasks = n - 4;
    std::size_t const lanes = std::max<std::size_t>(1, lane_tasks / 4);
    auto head = b.add("fastqSplit");
    auto merge_inputs = std::vector<std::size_t>{};
    for (auto len : split(lane_tasks, lanes)) {
        merge_inputs.push_back(b.tail(head, len, "lane"));
    }
    auto merge = b.add("mapMerge");
    for (auto t : merge_inputs) b.link(t, merge);
    auto index = b.add("maqIndex");
    b.link(merge, index);
    auto pileup = b.add("pileup");
    b.link(index, pileup);
}

// Groups of template-bank/inspiral pairs joined by thinca, fanned out again
// through trigbank/inspiral, joined per group and finally across groups.
void build_inspiral(Builder& b, std::size_t n) {
    std::size_t const groups = n >= 13 ? 2 : 1;
    std::size_t const width = (n - 1 - 2 * groups) / 4;
    std::size_t const rest = (n - 1 - 2 * groups) % 4;
    std::vector<std::size_t> group_joins;
    for (auto w : split(width, groups)) {
        std::vector<std::size_t> firsts;
        for (std::size_t i = 0; i < w; ++i) {
            auto a = b.add("TmpltBank");
            auto bb = b.add("Inspiral");
            b.link(a, bb);
            firsts.push_back(bb);
        }
        auto thinca = b.add("Thinca");
        for (auto t : firsts) b.link(t, thinca);
        std::vector<std::size_t> seconds;
        for (std::size_t i = 0; i < w; ++i) {
            auto e = b.add("TrigBank");
            b.link(thinca, e);
            auto f = b.add("Inspiral");
            b.link(e, f);
            seconds.push_back(f);
        }
        auto thinca2 = b.add("Thinca");
        for (auto t : seconds) b.link(t, thinca2);
        group_joins.push_back(thinca2);
    }
    auto last = b.add("Thinca");
    for (auto g : group_joins) b.link(g, last);
    b.tail(last, rest, "Thinca");
}

// SGT extraction sources fan out to seismogram synthesis; peak values and
// seismograms are zipped separately and combined by a final join.
void build_cybershake(Builder& b, std::size_t n) {
    std::size_t const groups = n >= 8 ? 2 : 1;
    std::size_t const width = (n - 2 - groups) / 2;
    std::size_t const rest = (n - 2 - groups) % 2;
    std::vector<std::size_t> synth, peaks;
    for (auto w : split(width, groups)) {
        auto extract = b.add("ExtractSGT");
        for (std::size_t i = 0; i < w; ++i) {
            auto s = b.add("SeismogramSynthesis");
            b.link(extract, s);
            auto p = b.add("PeakValCalc");
            b.link(s, p);
            synth.push_back(s);
            peaks.push_back(p);
        }
    }
    auto zip_seis = b.add("ZipSeis");
    for (auto s : synth) b.link(s, zip_seis);
    auto zip_psa = b.add("ZipPSA");
    for (auto p : peaks) b.link(p, zip_psa);
    b.link(zip_seis, zip_psa);
    b.tail(zip_psa, rest, "ZipPSA");
}

// Two independent branches: a concat/fan-out/join branch and a wide patser
// fan-in, both feeding the final task.
void build_sipht(Builder& b, std::size_t n) {
    std::size_t const c = std::max<std::size_t>(1, n / 8);
    std::size_t const a = std::max<std::size_t>(1, n / 5);
    std::size_t const f = n - 3 - c - a;
    auto concat = b.add("SRNA");
    for (std::size_t i = 0; i < c; ++i) {
        auto t = b.add("Findterm");
        b.link(t, concat);
    }
    auto final_task = b.add("SRNA_annotate");
    for (std::size_t i = 0; i < a; ++i) {
        auto t = b.add("Blast");
        b.link(concat, t);
        b.link(t, final_task);
    }
    auto patser_concat = b.add("Patser_concate");
    for (std::size_t i = 0; i < f; ++i) {
        auto t = b.add("Patser");
        b.link(t, patser_concat);
    }
    b.link(patser_concat, final_task);
}

} // namespace

Shape parse_shape(std::string_view name) {
    for (auto const& [shape, text] : shape_names)
        if (text == name) return shape;
    throw Error(ErrorCode::UnknownShape, "unknown workflow shape '" + std::string(name) + "'");
}

std::string_view to_string(Shape shape) noexcept {
    for (auto const& [s, text] : shape_names)
        if (s == shape) return text;
    return "unknown";
}

std::vector<Shape> all_shapes() {
    std::vector<Shape> out;
    for (auto const& entry : shape_names) out.push_back(entry.first);
    return out;
}

std::size_t minimum_tasks(Shape shape) noexcept {
    switch (shape) {
    case Shape::Montage: return 11;
    case Shape::Epigenomics: return 5;
    case Shape::Inspiral: return 7;
    case Shape::CyberShake: return 5;
    case Shape::Sipht: return 6;
    case Shape::Pipeline:
    case Shape::ForkJoin: return 3;
    }
    return 3;
}

Workflow generate(Shape shape, std::size_t n_tasks, std::uint64_t seed, GeneratorConfig const& config) {
    if (n_tasks < minimum_tasks(shape))
        throw Error(ErrorCode::TooSmall, std::string(to_string(shape)) + " needs at least " +
                                             std::to_string(minimum_tasks(shape)) + " tasks, got " +
                                             std::to_string(n_tasks));
    Builder b;
    switch (shape) {
    case Shape::Montage: build_montage(b, n_tasks); break;
    case Shape::Epigenomics: build_epigenomics(b, n_tasks); break;
    case Shape::Inspiral: build_inspiral(b, n_tasks); break;
    case Shape::CyberShake: build_cybershake(b, n_tasks); break;
    case Shape::Sipht: build_sipht(b, n_tasks); break;
    case Shape::Pipeline: build_pipeline(b, n_tasks); break;
    case Shape::ForkJoin: build_fork_join(b, n_tasks); break;
    }
    if (b.size() != n_tasks)
        throw Error(ErrorCode::TooSmall, "internal: generator produced " + std::to_string(b.size()) + " tasks");
    return b.build(seed, config);
}

} // namespace riot::workflow
