#include "cechdr/derham.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace cechdr {

long long chi_of_dims(const std::vector<int>& dims) {
    long long chi = 0;
    for (size_t i = 0; i < dims.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * dims[i];
    return chi;
}

long long chi_c_of_dims(const std::vector<int>& dims) {
    if (dims.empty()) return 0;
    const int n = static_cast<int>(dims.size()) - 1;
    return (n % 2 == 0 ? 1 : -1) * chi_of_dims(dims);
}

namespace {

void check_deadline(const Deadline& deadline) {
    if (deadline && std::chrono::steady_clock::now() > *deadline) throw BudgetExceeded();
}

// Probe-step windows dom(0) = W, dom(t+1) = grow(dom(t)) with the matching
// one-differential codomains cod(t), the per-level projected partials, and
// the embeddings of the outer window's classes; everything built on demand.
class LevelCache {
  public:
    LevelCache(const LocalizedModuleSpec& spec, const std::vector<int>& ops,
               TruncationWindow outer, WorkCounters* counters, Deadline deadline)
        : spec_(spec), ops_(ops), counters_(counters), deadline_(deadline) {
        doms_.emplace_back(spec_, outer);
        note_dim(doms_.back());
    }

    const WindowBasis& dom(int t) {
        ensure_dom(t);
        return doms_[t];
    }

    const WindowBasis& cod(int t) {
        ensure_dom(t);
        while (static_cast<int>(cods_.size()) <= t) {
            check_deadline(deadline_);
            const int s = static_cast<int>(cods_.size());
            cods_.emplace_back(spec_, codomain_step(spec_, doms_[s].window()));
            note_dim(cods_.back());
        }
        return cods_[t];
    }

    // partials[opPos][class]: dom(t) class -> projection in cod(t)
    const std::vector<std::vector<SparseVec>>& partials(int t) {
        ensure_dom(t);
        cod(t);
        while (static_cast<int>(dcache_.size()) <= t) dcache_.emplace_back();
        if (dcache_[t].empty() && doms_[t].quotient_dimension() > 0) {
            auto& pc = dcache_[t];
            pc.resize(ops_.size());
            for (size_t p = 0; p < ops_.size(); ++p) {
                pc[p].reserve(doms_[t].quotient_dimension());
                for (int c = 0; c < doms_[t].quotient_dimension(); ++c)
                    pc[p].push_back(partial_of_class(spec_, doms_[t], c, ops_[p], cods_[t]));
            }
        }
        return dcache_[t];
    }

    // dom(0) classes embedded into cod(t)
    const std::vector<SparseVec>& embeddings(int t) {
        cod(t);
        while (static_cast<int>(ecache_.size()) <= t) ecache_.emplace_back();
        if (ecache_[t].empty() && doms_[0].quotient_dimension() > 0) {
            auto& e = ecache_[t];
            e.reserve(doms_[0].quotient_dimension());
            for (int c = 0; c < doms_[0].quotient_dimension(); ++c)
                e.push_back(embed_class(spec_, doms_[0], c, cods_[t]));
        }
        return ecache_[t];
    }

    int nops() const { return static_cast<int>(ops_.size()); }
    bool graded() const { return spec_.graded(); }

  private:
    void ensure_dom(int t) {
        while (static_cast<int>(doms_.size()) <= t) {
            check_deadline(deadline_);
            doms_.emplace_back(spec_, grow_step(spec_, doms_.back().window()));
            note_dim(doms_.back());
        }
    }
    void note_dim(const WindowBasis& wb) {
        if (counters_)
            counters_->max_quotient_dim =
                std::max(counters_->max_quotient_dim, wb.quotient_dimension());
    }

    const LocalizedModuleSpec& spec_;
    std::vector<int> ops_;
    std::vector<WindowBasis> doms_;
    std::vector<WindowBasis> cods_;
    std::vector<std::vector<std::vector<SparseVec>>> dcache_;
    std::vector<std::vector<SparseVec>> ecache_;
    WorkCounters* counters_;
    Deadline deadline_;
};

struct BlockColumns {
    std::vector<SparseVec> cols;
    std::vector<std::pair<int, int>> ids;  // (domain subset position, class)
};

// Columns of d_i : K_i(dom t) -> K_{i-1}(cod t) whose domain class lies in
// the given graded block.
BlockColumns koszul_block_columns(LevelCache& lc, int t, int degree_i, int block) {
    BlockColumns out;
    const int nops = lc.nops();
    if (degree_i < 1 || degree_i > nops) return out;
    const auto& partials = lc.partials(t);
    const WindowBasis& dom = lc.dom(t);
    const WindowBasis& cod = lc.cod(t);
    if (partials.empty()) return out;

    auto dom_subsets = index_subsets(nops, degree_i);
    auto cod_subsets = index_subsets(nops, degree_i - 1);
    std::map<std::vector<int>, int> cod_pos;
    for (int s = 0; s < static_cast<int>(cod_subsets.size()); ++s)
        cod_pos.emplace(cod_subsets[s], s);

    for (int sJ = 0; sJ < static_cast<int>(dom_subsets.size()); ++sJ) {
        const auto& J = dom_subsets[sJ];
        for (int c = 0; c < dom.quotient_dimension(); ++c) {
            if (dom.block_of(c) != block) continue;
            SparseVec col;
            for (size_t pos = 0; pos < J.size(); ++pos) {
                std::vector<int> rest;
                rest.reserve(J.size() - 1);
                for (size_t s = 0; s < J.size(); ++s)
                    if (s != pos) rest.push_back(J[s]);
                const int offset = cod_pos.at(rest) * cod.quotient_dimension();
                const Rational sign(pos % 2 == 0 ? 1 : -1);
                SparseVec shifted;
                shifted.reserve(partials[J[pos]][c].size());
                for (const auto& [idx, val] : partials[J[pos]][c])
                    shifted.emplace_back(idx + offset, val);
                sparse_axpy(col, sign, shifted);
            }
            out.cols.push_back(std::move(col));
            out.ids.emplace_back(sJ, c);
        }
    }
    return out;
}

struct CycleSet {
    std::vector<SparseVec> combos;         // kernel vectors over local column ids
    std::vector<std::pair<int, int>> ids;  // local id -> (subset position, class)
};

// kernel of the level-0 block columns of d_i, as combinations of the columns
CycleSet block_cycles(LevelCache& lc, int degree_i, int block, WorkCounters* counters) {
    CycleSet out;
    const WindowBasis& dom = lc.dom(0);

    if (degree_i == 0) {
        // d_0 = 0: every class is a cycle
        for (int c = 0; c < dom.quotient_dimension(); ++c)
            if (dom.block_of(c) == block) out.ids.emplace_back(0, c);
        for (size_t l = 0; l < out.ids.size(); ++l)
            out.combos.push_back(SparseVec{{static_cast<int>(l), Rational(1)}});
        return out;
    }

    BlockColumns cols = koszul_block_columns(lc, 0, degree_i, block);
    out.ids = std::move(cols.ids);
    ZEchelon ech;
    for (size_t l = 0; l < cols.cols.size(); ++l) {
        Integer scale;
        ZSparseVec zv = to_integer(cols.cols[l], &scale);
        // seeding the tag with the scale makes dependencies refer to the
        // original rational columns (up to one overall scalar)
        ZSparseVec dep;
        if (!ech.insert_tracked(std::move(zv),
                                ZSparseVec{{static_cast<int>(l), scale}}, &dep)) {
            SparseVec combo;
            combo.reserve(dep.size());
            for (const auto& [idx, val] : dep) combo.emplace_back(idx, Rational(val));
            out.combos.push_back(std::move(combo));
        }
    }
    if (counters) {
        counters->echelon_work += ech.work();
        counters->columns += static_cast<long long>(out.ids.size());
    }
    return out;
}

struct BlockProbeResult {
    int apparent = 0;
    int cycles = 0;
    bool exhausted = false;
};

// apparent dim of H_degree_i restricted to one graded block
BlockProbeResult block_apparent(LevelCache& lc, int degree_i, int block, int probe_depth,
                                WorkCounters* counters, const Deadline& deadline) {
    BlockProbeResult out;
    CycleSet cycles = block_cycles(lc, degree_i, block, counters);
    out.cycles = static_cast<int>(cycles.combos.size());
    if (cycles.combos.empty()) return out;
    // differentials lower the graded block by one; ungraded specs live in
    // the single block 0
    const int boundary_block = lc.graded() ? block + 1 : block;

    int prev_apparent = -1;
    for (int t = 1; t <= probe_depth; ++t) {
        check_deadline(deadline);
        const WindowBasis& codomain = lc.cod(t);
        const auto& emb = lc.embeddings(t);

        ZEchelon ech;
        // boundaries from degree i+1 chains over level t
        BlockColumns bcols = koszul_block_columns(lc, t, degree_i + 1, boundary_block);
        for (auto& col : bcols.cols) ech.insert(to_integer(col));
        if (counters) counters->columns += static_cast<long long>(bcols.cols.size());

        // embedded cycles
        int independent = 0;
        for (const auto& z : cycles.combos) {
            SparseVec image;
            for (const auto& [local, coeff] : z) {
                const auto& [sJ, c] = cycles.ids[local];
                const int offset = sJ * codomain.quotient_dimension();
                SparseVec shifted;
                shifted.reserve(emb[c].size());
                for (const auto& [idx, val] : emb[c]) shifted.emplace_back(idx + offset, val);
                sparse_axpy(image, coeff, shifted);
            }
            if (ech.insert(to_integer(image))) ++independent;
        }
        if (counters) counters->echelon_work += ech.work();

        if (independent == prev_apparent || probe_depth == 1) {
            out.apparent = independent;
            return out;
        }
        prev_apparent = independent;
        out.apparent = independent;
    }
    out.exhausted = true;  // still moving at the probe cap
    return out;
}

}  // namespace

WindowTraceEntry homology_dims(const LocalizedModuleSpec& spec, const std::vector<int>& ops,
                               TruncationWindow outer, int probe_depth,
                               WorkCounters* counters, Deadline deadline) {
    if (probe_depth < 1) throw std::invalid_argument("probe depth must be positive");
    const int nops = static_cast<int>(ops.size());
    LevelCache lc(spec, ops, outer, counters, deadline);

    // graded block keys present in the outer window
    std::set<int> blocks;
    const WindowBasis& base = lc.dom(0);
    for (int c = 0; c < base.quotient_dimension(); ++c) blocks.insert(base.block_of(c));

    WindowTraceEntry entry;
    entry.window = outer;
    entry.apparent.assign(nops + 1, 0);
    entry.cycles.assign(nops + 1, 0);
    entry.probe_exhausted.assign(nops + 1, false);
    for (int i = 0; i <= nops; ++i) {
        check_deadline(deadline);
        for (int block : blocks) {
            BlockProbeResult r = block_apparent(lc, i, block, probe_depth, counters, deadline);
            entry.apparent[i] += r.apparent;
            entry.cycles[i] += r.cycles;
            entry.probe_exhausted[i] = entry.probe_exhausted[i] || r.exhausted;
        }
    }
    return entry;
}

DeRhamResult derham_homology(const LocalizedModuleSpec& spec, const WindowSchedule& schedule,
                             std::vector<int> ops, Deadline deadline) {
    if (ops.empty()) {
        ops.resize(spec.arity());
        for (int i = 0; i < spec.arity(); ++i) ops[i] = i;
    } else {
        std::sort(ops.begin(), ops.end());
        ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
        for (int v : ops)
            if (v < 0 || v >= spec.arity())
                throw std::invalid_argument("operator index out of range");
    }
    if (schedule.span < 1 || schedule.max_windows < 1 || schedule.dk < 0 || schedule.dD < 0 ||
        schedule.k0 < 0 || schedule.D0 < 0)
        throw std::invalid_argument("bad window schedule");

    DeRhamResult result;
    result.ops = ops;
    result.schedule = schedule;

    for (int t = 0; t < schedule.max_windows; ++t) {
        TruncationWindow w{schedule.k0 + t * schedule.dk, schedule.D0 + t * schedule.dD};
        try {
            result.trace.push_back(
                homology_dims(spec, ops, w, schedule.probe_depth, &result.counters, deadline));
        } catch (const BudgetExceeded&) {
            result.note = "time budget exhausted inside window (k=" +
                          std::to_string(w.pole_order) +
                          ", D=" + std::to_string(w.numerator_degree) + ")";
            return result;
        }
        ++result.counters.outer_windows;

        if (static_cast<int>(result.trace.size()) >= schedule.span) {
            bool agree = true;
            const auto& ref = result.trace.back();
            if (!ref.clean()) agree = false;
            for (int s = 2; agree && s <= schedule.span; ++s) {
                const auto& e = result.trace[result.trace.size() - s];
                if (!e.clean() || e.apparent != ref.apparent) agree = false;
            }
            if (agree) {
                result.stabilized = true;
                result.dims = ref.apparent;
                result.chi = chi_of_dims(result.dims);
                result.chi_c = chi_c_of_dims(result.dims);
                return result;
            }
        }
        if (deadline && std::chrono::steady_clock::now() > *deadline) {
            result.note = "time budget exhausted before stabilization";
            return result;
        }
    }
    result.note = "window budget exhausted before stabilization";
    return result;
}

}  // namespace cechdr
