package org.acme.billing;

public class Billing {
    private final Ledger ledger;
    private final RateTable rates;

    public Billing(Ledger ledger, RateTable rates) {
        this.ledger = ledger;
        this.rates = rates;
    }

    public int charge(String account) {
        if (ledger.isFrozen(account)) {
            return 0;
        }
        return ledger.balanceOf(account) - rates.feeFor(account);
    }

    public String statement(String account) {
        return ledger.ownerOf(account) + ": " + rates.currency();
    }
}
