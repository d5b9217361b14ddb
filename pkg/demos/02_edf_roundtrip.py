"""
EDF round trip
==============

Write a 30 s, 128 Hz recording, parse it again and pull out one channel.
"""

import numpy as np

from ssvep_duty.edf import (SampleSeries, extract_channel, parse_edf, recording_from_series,
                            write_edf)

t = np.arange(30 * 128) / 128
o1 = SampleSeries(5 * np.sin(2 * np.pi * 8 * t), 128, "O1")
o2 = SampleSeries(8 * np.sin(2 * np.pi * 8 * t + 1.0), 128, "O2")
rec = recording_from_series([o1, o2], patient_id="demo")

data = write_edf(rec)
print(len(data), "bytes,", rec.file_header.header_bytes, "of header")

back = parse_edf(data)
print("structurally equal:", back == rec)
print("byte identical:", write_edf(back) == data)

x = extract_channel(back, "O2")
# the digital grid limits precision to one LSB of the physical range
print(len(x), "samples, max error", np.abs(x.values - o2.values).max())
