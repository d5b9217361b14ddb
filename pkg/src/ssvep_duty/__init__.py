"""PWM duty-cycle SSVEP toolkit: stimulus schedules, EDF I/O, simulation,
FFT-amplitude analysis and Kruskal-Wallis statistics."""

from .edf import (EdfFileHeader, EdfRecording, SampleSeries, SignalHeader, extract_channel,
                  parse_edf, read_edf, write_edf)
from .pipeline import (AmplitudeSet, Epoch, FilterSpec, bandpass, fft_max_amplitude,
                       process_condition, segment)
from .protocol import (ComfortRatings, ProtocolConfig, ProtocolPlan, ReportBundle,
                       aggregate_comfort, box_stats, plan_session, reproduce)
from .simulate import (Condition, ResponseModel, SimConfig, TrialSignal, gen_pink_noise,
                       synth_session, synth_trial)
from .stats import (BestDutySelection, GroupedAmplitudes, KwResult, chi_square_sf,
                    kruskal_wallis, rank_with_ties, select_best_duty, summarize_group)
from .waveform import (EdgeSchedule, MeasuredWaveform, OnOffPeriods, StimulusSpec,
                       build_edge_schedule, compute_on_off, measure_schedule)

__version__ = "0.1.0"
