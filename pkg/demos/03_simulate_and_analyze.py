"""
Simulated trials through the amplitude pipeline
===============================================

One subject, 8 Hz, all five duty cycles. Each 30 s trial is band-passed
around 8 Hz, cut into 1 s epochs and reduced to its largest FFT magnitude.
"""

import numpy as np

from ssvep_duty.edf import SampleSeries
from ssvep_duty.pipeline import process_condition
from ssvep_duty.simulate import Condition, ResponseModel, SimConfig, synth_trial

model = ResponseModel.default()
cfg = SimConfig(seed=1)

for duty in (50, 80, 85, 90, 95):
    trials = [synth_trial(Condition(8, duty, 1, k), model, cfg).series for k in range(1, 6)]
    amps = process_condition(trials, 8, condition=(8, duty)).amplitudes
    print(f"{duty}%  target {model.amplitude(8, duty):6.1f}  "
          f"recovered {amps.mean():6.1f} +- {amps.std(ddof=1):4.1f}  (n={len(amps)})")

# a clean tone of amplitude A comes out as 64*A
t = np.arange(3840) / 128
clean = process_condition([SampleSeries(2.0 * np.sin(2 * np.pi * 8 * t), 128)], 8)
print("clean tone, A=2:", clean.amplitudes.mean())
