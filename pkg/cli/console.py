"""
Colored console output for the command front end.
"""

import json
import shutil

import pyfiglet
from colorama import Fore, Style, init

from greenkernel import __version__

# Initialize colorama
init(autoreset=True)

## ---------------------------- ##
##       Color Settings         ##
## ---------------------------- ##
PRIMARY_COLOR = Fore.YELLOW
SECONDARY_COLOR = Fore.BLUE
ASCII_COLOR = Fore.WHITE
INFO_COLOR = Fore.CYAN
SUCCESS_COLOR = Fore.GREEN
ERROR_COLOR = Fore.RED
WARNING_COLOR = Fore.LIGHTYELLOW_EX
BORDER_COLOR = Fore.YELLOW

## ---------------------------- ##
##      Decoration Settings     ##
## ---------------------------- ##
HORIZONTAL_LINE = "═"
DIAMOND = "♦"
STAR = "✦"
HEART = "♥"
CLUB = "♣"


def get_terminal_width():
    return shutil.get_terminal_size((80, 24)).columns


def print_banner():
    """Figlet title with the package version."""
    art = pyfiglet.Figlet(font="ansi_shadow").renderText("greenkernel")
    print(f"{ASCII_COLOR}{art}")
    print(f"{PRIMARY_COLOR}    Green's functions and kernel convergence, version {__version__}\n")


def print_header(title):
    term_width = get_terminal_width()
    title_text = f" {title} "
    border_length = max(2, (term_width - len(title_text)) // 2)
    print(
        f"{BORDER_COLOR}{HORIZONTAL_LINE * border_length}{SECONDARY_COLOR}{title_text}{BORDER_COLOR}{HORIZONTAL_LINE * border_length}")


def print_footer():
    print(f"{BORDER_COLOR}{HORIZONTAL_LINE * get_terminal_width()}")


def print_success(message):
    print(f"\n{SUCCESS_COLOR}{STAR * 3} {message} {STAR * 3}\n")


def print_error(message):
    print(f"\n{ERROR_COLOR}{HEART * 3} {message} {HEART * 3}\n")


def print_warning(message):
    print(f"\n{WARNING_COLOR}{DIAMOND * 3} {message} {DIAMOND * 3}\n")


def print_info(message):
    print(f"{INFO_COLOR}{CLUB} {message}{Style.RESET_ALL}")


def _format_value(value):
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, default=str)
    return str(value)


def render(response, exit_code):
    """Human-readable form of a command response."""
    if not response.get('success'):
        print_error(f"{response.get('error')}: {response.get('message')}")
        for key, value in sorted((response.get('details') or {}).items()):
            print_info(f"{key}: {_format_value(value)}")
        return

    print_header(response.get('message', ''))
    for key, value in (response.get('data') or {}).items():
        print_info(f"{key}: {_format_value(value)}")
    print_footer()
    if exit_code == 0:
        print_success("accepted")
    elif exit_code == 1:
        print_warning("acceptance predicate failed")
