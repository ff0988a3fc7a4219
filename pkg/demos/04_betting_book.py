"""Pricing bets off a mixture of independent coins loses money.

An agent believes two tosses are independent with heads probability
somewhere in [0.1, 0.5]. Mixing the extreme cases gives the coherent
odds (0.13, 0.17, 0.17, 0.53), and a bookmaker who trades against those
odds at fair prices holds a book whose expectation for the agent is
negative for every heads probability in the interval except the two
endpoints.

Run:  python demos/04_betting_book.py
"""

from credal import (
    BetBook,
    Event,
    Ticket,
    booked_in_expectation,
    coin_family,
    expectation_polynomial,
    expectation_under,
    fair_price,
    iid_coin,
    mixture,
)

low, high = iid_coin(0.1, 2), iid_coin(0.5, 2)
q = mixture([0.5, 0.5], [low, high])
space = q.space
print("posted odds:", {a: float(v) for a, v in zip(space.atoms, q.probs)})

hh, ht = Event.of(space, "HH"), Event.of(space, "HT")
print(f"fair price of a $100 ticket on HH: ${fair_price(100.0, hh, q):.2f}")
print(f"fair price of a $150 ticket on HT: ${fair_price(150.0, ht, q):.2f}")

# The bookmaker sells the agent the HH ticket and buys the HT ticket,
# both at those fair prices (cents are exact integers inside).
book = BetBook(
    (
        Ticket("buy", 1300, 10000, hh),
        Ticket("sell", 2550, 15000, ht),
    )
)

from credal import payoff_table

table = payoff_table(book)
print("\nbookmaker net per outcome:", {a: float(v) for a, v in zip(space.atoms, table.antagonist)})
print(f"expectation under the posted odds: ${expectation_under(book, q):+.2f} (fair!)")

# As a function of the true heads probability p the bookmaker expects
# -250 p^2 + 150 p - 12.5 dollars: zero at p = 0.1 and 0.5, positive
# everywhere between, with a peak of $10 at p = 0.3.
poly = expectation_polynomial(book)
print("\nbookmaker expectation polynomial (ascending):", poly.coefficients)
print("roots:", poly.real_roots())
print("peak:", poly.extremum_on(0.1, 0.5, "max"))

verdict = booked_in_expectation(book, coin_family(0.1, 0.5))
print(
    f"\nverdict over the whole family: {verdict.verdict} "
    f"(agent expectation ranges [{verdict.min_agent_expectation:.2f}, "
    f"{verdict.max_agent_expectation:.2f}])"
)
print(
    "the agent loses in expectation at every admissible coin except the\n"
    "interval endpoints, despite posting individually coherent odds."
)
