"""Command-line entry point: ``ssvep-duty <command> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import edf, protocol, waveform
from .simulate import ResponseModel, SimConfig, synth_session


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.replace(",", " ").split())


def cmd_stimgen(args) -> int:
    spec = waveform.StimulusSpec(args.freq, args.duty, args.tick_rate, args.duration)
    schedule = waveform.build_edge_schedule(spec)
    m = waveform.measure_schedule(schedule, spec)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for line in schedule.to_csv_lines():
            out.write(line + "\n")
    finally:
        if args.out:
            out.close()
    period, on = waveform.cycle_ticks(spec)
    meta = {
        "cycle_ticks": period, "on_ticks": on, "edges": len(schedule),
        "measured_freq_hz": m.measured_freq_hz, "measured_duty_pct": m.measured_duty_pct,
        "freq_error_hz": m.freq_error_hz, "duty_error_pp": m.duty_error_pp,
        "within_tolerance": m.within(),
    }
    for k, v in meta.items():
        print(f"# {k}={v}", file=sys.stderr)
    return 0 if m.within() else 1


def cmd_edf_info(args) -> int:
    rec = edf.read_edf(args.file)
    fh = rec.file_header
    print(f"version        {fh.version}")
    print(f"patient        {fh.patient_id}")
    print(f"recording      {fh.recording_id}")
    print(f"start          {fh.start_date} {fh.start_time}")
    print(f"header bytes   {fh.header_bytes}")
    print(f"records        {fh.n_records} x {fh.record_duration_s:g} s")
    print(f"signals        {fh.n_signals}")
    for sh in rec.signal_headers:
        rate = sh.samples_per_record / fh.record_duration_s
        print(f"  {sh.label:<16} {rate:g} Hz  phys [{sh.physical_min:g}, {sh.physical_max:g}] "
              f"{sh.physical_dimension}  dig [{sh.digital_min}, {sh.digital_max}]")
    return 0


def cmd_edf_extract(args) -> int:
    series = edf.extract_channel(edf.read_edf(args.file), args.channel)
    with open(args.out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["index", "physical_value"])
        for i, v in enumerate(series.values.tolist()):
            w.writerow([i, repr(v)])
    return 0


def _config(args) -> protocol.ProtocolConfig:
    cfg = protocol.ProtocolConfig.from_file(args.config) if args.config \
        else protocol.ProtocolConfig()
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "subjects", None) is not None:
        overrides["subjects"] = args.subjects
    if getattr(args, "model", None):
        overrides["model_path"] = args.model
    if overrides:
        cfg = protocol.ProtocolConfig(**{**cfg.__dict__, **overrides})
    return cfg


def cmd_plan(args) -> int:
    plan = protocol.plan_session(_config(args))
    text = json.dumps(plan.to_dict(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_simulate(args) -> int:
    cfg = _config(args)
    model = ResponseModel.from_csv(cfg.model_path) if cfg.model_path else ResponseModel.default()
    sim = SimConfig(noise_sd=cfg.noise_sd, seed=cfg.seed, trial_s=cfg.trial_s)
    paths = synth_session(range(1, cfg.subjects + 1), model, sim,
                          protocol.plan_session(cfg), args.out)
    print(f"wrote {len(paths)} files to {args.out}", file=sys.stderr)
    return 0


def cmd_analyze(args) -> int:
    rows = protocol.analyze_files(protocol.expand_inputs(args.inputs), args.channel, args.freq)
    protocol.write_amplitudes(rows, args.out)
    print(f"wrote {len(rows)} amplitudes to {args.out}", file=sys.stderr)
    return 0


def cmd_stats(args) -> int:
    report = protocol.stats_report(protocol.read_amplitudes(args.inputs), args.scope)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_report(args) -> int:
    rows = protocol.read_amplitudes(args.inputs)
    comfort = protocol.ComfortRatings.from_csv(args.comfort) if args.comfort else None
    bundle = protocol.build_report(rows, comfort)
    Path(args.out).write_text(bundle.to_json())
    if args.box_dir:
        Path(args.box_dir).mkdir(parents=True, exist_ok=True)
        bundle.write_box_csvs(args.box_dir)
    return 0


def cmd_reproduce(args) -> int:
    cfg = _config(args)
    comfort = protocol.ComfortRatings.from_csv(args.comfort) if args.comfort else None
    bundle = protocol.reproduce(cfg.seed, args.out, cfg, comfort)
    for f, d in sorted(bundle.selected.items()):
        kw = bundle.pooled[f]
        print(f"{f:g} Hz: best duty {d:g}%  H={kw.h_statistic:.1f} df={kw.df} p={kw.p_value:.3g}")
    print(f"per-subject cells selecting 85%: {bundle.cells_selecting(85.0)}"
          f"/{len(bundle.subject_selected)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ssvep-duty", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("stimgen", help="emit a PWM edge schedule as CSV")
    s.add_argument("--freq", type=float, required=True)
    s.add_argument("--duty", type=float, required=True)
    s.add_argument("--tick-rate", type=int, default=waveform.DEFAULT_TICK_RATE_HZ)
    s.add_argument("--duration", type=float, default=1.0)
    s.add_argument("--out", help="CSV path (default stdout); summary goes to stderr")
    s.set_defaults(func=cmd_stimgen)

    e = sub.add_parser("edf", help="inspect EDF files")
    esub = e.add_subparsers(dest="edf_command", required=True)
    ei = esub.add_parser("info")
    ei.add_argument("file")
    ei.set_defaults(func=cmd_edf_info)
    ex = esub.add_parser("extract")
    ex.add_argument("file")
    ex.add_argument("--channel", default="O2")
    ex.add_argument("--out", required=True)
    ex.set_defaults(func=cmd_edf_extract)

    def config_args(sp, seed=True):
        sp.add_argument("--config", help="flat key = value config file")
        if seed:
            sp.add_argument("--seed", type=int)

    pl = sub.add_parser("plan", help="print a randomized session plan")
    config_args(pl)
    pl.add_argument("--out")
    pl.set_defaults(func=cmd_plan)

    sm = sub.add_parser("simulate", help="write synthetic trial EDF files")
    config_args(sm)
    sm.add_argument("--subjects", type=int)
    sm.add_argument("--model", help="CSV: frequency_hz,duty_pct,amplitude")
    sm.add_argument("--out", required=True)
    sm.set_defaults(func=cmd_simulate)

    an = sub.add_parser("analyze", help="maximal FFT amplitude per 1 s segment")
    an.add_argument("--in", dest="inputs", nargs="+", required=True)
    an.add_argument("--freq", type=float)
    an.add_argument("--channel", default="O2")
    an.add_argument("--out", required=True)
    an.set_defaults(func=cmd_analyze)

    st = sub.add_parser("stats", help="Kruskal-Wallis per subject or pooled")
    st.add_argument("--in", dest="inputs", required=True)
    st.add_argument("--scope", choices=("subject", "pooled"), default="subject")
    st.add_argument("--out")
    st.set_defaults(func=cmd_stats)

    rp = sub.add_parser("report", help="box-plot data, tests, comfort means")
    rp.add_argument("--in", dest="inputs", required=True)
    rp.add_argument("--comfort", help="CSV: subject,frequency_hz,duty_pct,rating")
    rp.add_argument("--out", required=True)
    rp.add_argument("--box-dir")
    rp.set_defaults(func=cmd_report)

    rr = sub.add_parser("reproduce", help="simulate -> analyze -> stats -> report")
    config_args(rr)
    rr.add_argument("--subjects", type=int)
    rr.add_argument("--model")
    rr.add_argument("--comfort")
    rr.add_argument("--out", required=True)
    rr.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, FileExistsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
