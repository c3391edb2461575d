# Configure Django for pytest the same way runtests.py does.
from runtests import configure

configure()
