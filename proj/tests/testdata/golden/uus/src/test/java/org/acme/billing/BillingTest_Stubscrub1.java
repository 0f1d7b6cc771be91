package org.acme.billing;

import static org.junit.Assert.assertEquals;
import static org.mockito.Mockito.mock;
import static org.mockito.Mockito.when;

import org.junit.Before;
import org.junit.Test;

public class BillingTest_Stubscrub1 {
    private static final String ACCOUNT = "ACC-9";

    private Ledger ledger;
    private RateTable rates;
    private Billing billing;

    @Before
    public void setUp() {
        ledger = mock(Ledger.class);
        rates = mock(RateTable.class);
        billing = new Billing(ledger, rates);
        when(ledger.ownerOf(ACCOUNT)).thenReturn("Noor");
        when(rates.currency()).thenReturn("GBP");
    }

    @Test
    public void printsStatement() {
        assertEquals("Noor: GBP", billing.statement(ACCOUNT));
    }
}
