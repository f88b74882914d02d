"""A small exhaustive campaign, summarized by checker and branch."""

from addcomb.search import CampaignConfig, run_campaign, summarize

summary = summarize(run_campaign(CampaignConfig(max_order=7, t_range=(1, 3))))
print(f"{summary.pairs} pairs, {summary.records} records, {len(summary.counterexamples)} counterexamples")
for name, branches in sorted(summary.branches.items()):
    print(f"  {name:<13}", dict(sorted(branches.items())))
print("witness sizes l:", summary.witness_l)
print("first tight records (gap 0):")
for rec in summary.tight[:5]:
    print("  ", rec.group, rec.A, rec.B, "t =", rec.t)
