#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "homtop/errors.hpp"
#include "homtop/graph.hpp"
#include "homtop/identity.hpp"
#include "homtop/mhom.hpp"
#include "homtop/polysearch.hpp"
#include "homtop/topology.hpp"

namespace homtop {

enum class ComplexityClass { P, NPComplete };

inline std::string to_string(ComplexityClass c) {
    return c == ComplexityClass::P ? "P" : "NP-complete";
}

struct ClassificationResult {
    std::string id;
    std::optional<int> loop_vertex;
    BipartiteCertificate bipartite;
    ComplexityClass verdict = ComplexityClass::P;
    std::string rationale;  // loop | bipartite | non-bipartite-loopless
};

// The target graph admits an efficient colouring test exactly when it
// has a loop or is bipartite; everything else is as hard as it gets.
inline ClassificationResult classify(const Graph& h, std::string id = "") {
    ClassificationResult r;
    r.id = std::move(id);
    r.loop_vertex = has_loop(h);
    r.bipartite = is_bipartite(h);
    if (r.loop_vertex) {
        r.verdict = ComplexityClass::P;
        r.rationale = "loop";
    } else if (r.bipartite.bipartite) {
        r.verdict = ComplexityClass::P;
        r.rationale = "bipartite";
    } else {
        r.verdict = ComplexityClass::NPComplete;
        r.rationale = "non-bipartite-loopless";
    }
    return r;
}

struct CrossValidateOptions {
    int core_max_vertices = 8;
    SearchBudget search;
    IdentitySystem identities = siggers4();
    std::size_t max_mhom_elements = 100000;
    ContractibilityOptions contractibility;
    std::uint64_t seed = 0;
};

struct ImplicationCheck {
    std::string id;
    std::string statement;
    std::string status;  // verified | refuted | unchecked
    std::string note;
};

struct CrossValidationReport {
    ClassificationResult classification;
    std::optional<ClassificationResult> core_classification;
    std::optional<CoreResult> core;
    std::optional<SearchOutcome> search;
    std::optional<std::size_t> mhom_element_count;
    std::vector<ComponentVerdict> components;
    std::optional<std::vector<int>> flip_fixed;
    std::vector<std::string> stage_errors;  // budget exhaustion notes per stage
    std::vector<ImplicationCheck> checks;
    bool consistent = true;   // no refuted check
    bool all_checked = true;  // no unchecked check
};

// Runs the classifier, the identity search on the core, and the order
// topology of the two-point multihom poset, then scores each implication
// tying them together. Budget exhaustion downgrades the affected checks
// to unchecked; it never counts as evidence.
inline CrossValidationReport cross_validate(const Graph& h, const CrossValidateOptions& opt = {}) {
    if (h.n() == 0) throw std::invalid_argument("cross-validate: the graph is empty");
    CrossValidationReport r;
    r.classification = classify(h);

    try {
        r.core = compute_core(h, opt.core_max_vertices);
    } catch (const BudgetError& e) {
        r.stage_errors.push_back(std::string("core: ") + e.what());
    }
    if (r.core) {
        r.core_classification = classify(r.core->core);
        try {
            r.search = search_polymorphism(r.core->core, opt.identities, opt.search, opt.seed);
        } catch (const BudgetError& e) {
            r.stage_errors.push_back(std::string("search: ") + e.what());
        }
        try {
            const Graph k2(2, {{0, 1}});
            MhomPoset mp = build_mhom(k2, r.core->core, opt.max_mhom_elements);
            r.mhom_element_count = mp.elements.size();
            r.flip_fixed = flip(mp).fixed_elements;
            r.components = contractibility_verdicts(mp.poset, opt.contractibility);
        } catch (const BudgetError& e) {
            r.stage_errors.push_back(std::string("mhom: ") + e.what());
        }
    }

    auto add = [&](std::string id, std::string statement, std::string status, std::string note) {
        if (status == "refuted") r.consistent = false;
        if (status == "unchecked") r.all_checked = false;
        r.checks.push_back({std::move(id), std::move(statement), std::move(status), std::move(note)});
    };

    const bool core_known = r.core_classification.has_value();
    const bool core_hard =
        core_known && r.core_classification->verdict == ComplexityClass::NPComplete;

    {
        const std::string stmt =
            "a loopless non-bipartite core admits no idempotent polymorphism for the " +
            opt.identities.name + " identities";
        if (!core_known)
            add("hard-core-implies-unsat", stmt, "unchecked", "core unavailable");
        else if (!core_hard)
            add("hard-core-implies-unsat", stmt, "verified", "vacuous: the core is tractable");
        else if (!r.search)
            add("hard-core-implies-unsat", stmt, "unchecked", "search unavailable");
        else if (r.search->status == SearchStatus::Unsat)
            add("hard-core-implies-unsat", stmt, "verified", "");
        else if (r.search->status == SearchStatus::Sat)
            add("hard-core-implies-unsat", stmt, "refuted", "search found a table on a hard core");
        else
            add("hard-core-implies-unsat", stmt, "unchecked", "search budget exhausted");
    }
    {
        const std::string stmt = "a tractable core admits an idempotent polymorphism for the " +
                                 opt.identities.name + " identities";
        if (!core_known)
            add("tractable-core-implies-sat", stmt, "unchecked", "core unavailable");
        else if (core_hard)
            add("tractable-core-implies-sat", stmt, "verified", "vacuous: the core is hard");
        else if (!r.search)
            add("tractable-core-implies-sat", stmt, "unchecked", "search unavailable");
        else if (r.search->status == SearchStatus::Sat)
            add("tractable-core-implies-sat", stmt, "verified", "");
        else if (r.search->status == SearchStatus::Unsat)
            add("tractable-core-implies-sat", stmt, "refuted",
                "no table found on a tractable core");
        else
            add("tractable-core-implies-sat", stmt, "unchecked", "search budget exhausted");
    }
    {
        const std::string stmt =
            "a satisfied identity system forces every multihom component to be contractible";
        const bool have_components = r.mhom_element_count.has_value();
        if (!r.search)
            add("sat-implies-components-contractible", stmt, "unchecked", "search unavailable");
        else if (r.search->status == SearchStatus::Unsat)
            add("sat-implies-components-contractible", stmt, "verified",
                "vacuous: no table exists");
        else if (r.search->status == SearchStatus::Timeout)
            add("sat-implies-components-contractible", stmt, "unchecked",
                "search budget exhausted");
        else if (!have_components)
            add("sat-implies-components-contractible", stmt, "unchecked", "mhom unavailable");
        else {
            bool refuted = false, unknown = false;
            for (const auto& c : r.components) {
                if (c.verdict == Verdict::NotContractible) refuted = true;
                if (c.verdict == Verdict::Unknown) unknown = true;
            }
            if (refuted)
                add("sat-implies-components-contractible", stmt, "refuted",
                    "a component is provably not contractible");
            else if (unknown)
                add("sat-implies-components-contractible", stmt, "unchecked",
                    "component verdicts include UNKNOWN");
            else
                add("sat-implies-components-contractible", stmt, "verified", "");
        }
    }
    {
        const std::string stmt =
            "the coordinate swap on the two-point multihom poset has a fixed element exactly "
            "when the core has a loop";
        if (!core_known || !r.flip_fixed)
            add("flip-fixed-iff-loop", stmt, "unchecked", "mhom unavailable");
        else {
            const bool has_fixed = !r.flip_fixed->empty();
            const bool loop = r.core_classification->loop_vertex.has_value();
            if (has_fixed == loop)
                add("flip-fixed-iff-loop", stmt, "verified", "");
            else
                add("flip-fixed-iff-loop", stmt, "refuted",
                    has_fixed ? "fixed element without a loop" : "loop without a fixed element");
        }
    }
    return r;
}

struct CorpusInput {
    std::string id;
    std::optional<Graph> graph;  // absent when the entry failed to parse
    std::string parse_error;
};

struct CorpusEntry {
    std::string id;
    std::string error;  // parse or budget failure; empty when report is present
    std::optional<CrossValidationReport> report;
};

struct CorpusSummary {
    int total = 0;
    int processed = 0;
    int skipped = 0;
    int p_count = 0;
    int np_count = 0;
    int refuted_entries = 0;
    int unchecked_entries = 0;
    int checks_verified = 0;
    int checks_refuted = 0;
    int checks_unchecked = 0;
};

struct CorpusResult {
    std::vector<CorpusEntry> entries;  // sorted by id
    CorpusSummary summary;
};

inline int corpus_exit_code(const CorpusSummary& s) {
    if (s.checks_refuted > 0) return 2;
    if (s.checks_unchecked > 0) return 3;
    return 0;
}

// Independent per-graph work units; the aggregate is sorted by id, so
// the output does not depend on the degree of parallelism.
inline CorpusResult corpus_run(std::vector<CorpusInput> inputs, const CrossValidateOptions& opt,
                               int jobs = 1) {
    CorpusResult out;
    out.entries.resize(inputs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= inputs.size()) return;
            CorpusEntry e;
            e.id = inputs[i].id;
            if (!inputs[i].graph) {
                e.error = inputs[i].parse_error.empty() ? "unreadable entry"
                                                        : inputs[i].parse_error;
            } else {
                try {
                    e.report = cross_validate(*inputs[i].graph, opt);
                } catch (const BudgetError& err) {
                    e.error = err.what();
                } catch (const std::invalid_argument& err) {
                    e.error = err.what();
                }
            }
            out.entries[i] = std::move(e);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });

    auto& s = out.summary;
    s.total = static_cast<int>(out.entries.size());
    for (const auto& e : out.entries) {
        if (!e.report) {
            ++s.skipped;
            continue;
        }
        ++s.processed;
        if (e.report->classification.verdict == ComplexityClass::P)
            ++s.p_count;
        else
            ++s.np_count;
        if (!e.report->consistent) ++s.refuted_entries;
        if (!e.report->all_checked) ++s.unchecked_entries;
        for (const auto& c : e.report->checks) {
            if (c.status == "verified") ++s.checks_verified;
            if (c.status == "refuted") ++s.checks_refuted;
            if (c.status == "unchecked") ++s.checks_unchecked;
        }
    }
    return out;
}

}
