"""
UI module initialization file
"""

from ui.formatting import format_float, format_rational, format_series, header_line, json_meta
