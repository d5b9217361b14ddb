"""
PWM flicker schedules
=====================

Build the timer edge list for every frequency / duty combination and
measure it back the way an oscilloscope would.
"""

from ssvep_duty.waveform import StimulusSpec, build_edge_schedule, cycle_ticks, measure_schedule

for f in (7, 8, 9, 10):
    for d in (50, 80, 85, 90, 95):
        spec = StimulusSpec(f, d)  # 1 MHz timer, 30 s
        sched = build_edge_schedule(spec)
        m = measure_schedule(sched, spec)
        period, on = cycle_ticks(spec)
        print(f"{f:>2} Hz {d:>2}%  cycle={period} on={on}  "
              f"f_err={m.freq_error_hz:.1e} Hz  duty_err={m.duty_error_pp:.1e} pp")

# first edges of a short schedule, as written by `ssvep-duty stimgen`
short = build_edge_schedule(StimulusSpec(10, 85, duration_s=0.2))
print("\n".join(list(short.to_csv_lines())[:5]))
