"""A small deterministic trial campaign with per-weight success summary.

Run from the repository root:  python3 demos/04_montecarlo_campaign.py
"""

from hgpdecode import CampaignConfig, campaign_to_text, montecarlo

config = CampaignConfig(
    n=24,
    delta_v=3,
    delta_c=6,
    graph_seed=2,
    trials=60,
    weights=(1, 2, 3, 4),
    epsilon="1/20",
    reduction="greedy",
    seed=9,
)
print("config file form:\n")
print(config.to_text())

result = montecarlo(config)
print(campaign_to_text(result, include_wall=False))
print(f"all trials recovered the coset: {result.all_succeeded}")
print("Weights 1-3 recover perfectly on this small code; at weight 4 one "
      "trial lands\nin the wrong coset, and the harness surfaces that in the "
      "summary instead of\nhiding it (the CLI would exit 1 here).")
print("Re-running with the same config reproduces this byte for byte; "
      "per-trial seeds\nare a splitmix64 stream of the campaign seed, so "
      "trial k can be replayed alone.")
